#pragma once

// Weak majorization of Hermitian matrices and the Ky Fan maximum principle.

#include <vector>

#include "opineq/abelian.hpp"
#include "opineq/pinching.hpp"
#include "opineq/verdict.hpp"

namespace opineq {

/// sums[k-1] = sum of the k largest eigenvalues.  Computed from the sorted
/// spectrum only, so degenerate eigenspaces cannot affect it.
struct PartialSums {
  std::vector<double> sums;
  std::vector<double> abs_sums;  // same prefix sums of |eigenvalue|, for tolerance scales
};

PartialSums partial_sums(const HermitianMatrix& a);

/// a is weakly majorized by b: every top-k partial sum of a is at most that
/// of b, with slack rtol (1 + sum_{i<=k} |a_[i]| + |b_[i]|).
bool weak_majorize(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerance& tol = {});
Verdict weak_majorize_verdict(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerance& tol = {});

/// sum_i <a u_i, u_i> <= sum_{i<=k} a_[i] for an orthonormal m x k frame u.
/// A frame that is not orthonormal within rtol gives an invalid verdict.
Verdict kyfan_check(const HermitianMatrix& a, const Matrix& frame, const Tolerance& tol = {});

/// f(sum w a^* x a) weakly majorized by sum w a^* f(x) a, provided the
/// compressed tuple is abelian (automatic for one variable).
Verdict check_thm5(const CubeFunction& f, const ColumnField& field, const TupleField& tf, const Tolerance& tol = {});

/// f(lambda x + (1 - lambda) y) weakly majorized by lambda f(x) + (1 - lambda) f(y)
/// for compatible tuples.
Verdict check_corollary(const CubeFunction& f, const AbelianTuple& x, const AbelianTuple& y, double lambda,
                        const Tolerance& tol = {});

/// x <= y memberwise implies f(x) weakly majorized by f(y) for f convex and
/// separately increasing.
Verdict check_thm6(const CubeFunction& f, const AbelianTuple& x, const AbelianTuple& y, const Tolerance& tol = {});

}  // namespace opineq
