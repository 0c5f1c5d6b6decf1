#pragma once

// Named test functions of n variables and the randomized audit of their
// declared shape flags.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opineq/abelian.hpp"

namespace opineq {

/// Library members at arity n.  Every member's flags pass verify_flags.
///
///   affine           0.25 + sum s_i/(i+1) on [-2,2]^n   convex, concave, increasing
///   sum_squares      sum s_i^2 on [-2,2]^n               convex
///   max              max s_i on [-2,2]^n                 convex, increasing
///   square_of_sum    (sum s_i)^2 on [0,2]^n              convex, increasing
///   sum_exp          sum exp(s_i) on [-2,2]^n            convex, increasing
///   sum_cubes        sum s_i^3 on [0,2]^n                convex, increasing
///   geometric_mean   (prod s_i)^{1/n} on [0,2]^n         concave, increasing
///   sum_sqrt         sum sqrt(s_i) on [0,2]^n            concave, increasing
///   min              min s_i on [-2,2]^n                 concave, increasing
///   neg_log_product  -sum log s_i on [0.05,2]^n          convex (decreasing)
///   monomial         prod s_i^{i+1/2} on [0,2]^n         increasing only
std::vector<CubeFunction> function_library(std::size_t arity);

// Deliberately mislabeled functions; verify_flags must reject every one.
std::vector<CubeFunction> control_library(std::size_t arity);

// Throws ConfigError for an unknown name.
CubeFunction find_function(const std::string& name, std::size_t arity);

struct FlagAudit {
  bool ok = true;
  std::string witness;  // first failing probe, empty when ok
};

/// Probes each declared flag `samples` times: convexity (concavity) by
/// f(m) <= (f(a) + f(b))/2 + 1e-9 (>= ... - 1e-9) at random midpoints,
/// separate monotonicity by random coordinate pairs s < s'.  Infinite cube
/// sides are probed on [-10, 10].
FlagAudit verify_flags(const CubeFunction& f, int samples = 1000, std::uint64_t seed = kDefaultSeed);

}  // namespace opineq
