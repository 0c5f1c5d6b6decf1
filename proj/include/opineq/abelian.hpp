#pragma once

// Commuting Hermitian tuples and the joint functional calculus f(x1, ..., xn).

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "opineq/linalg.hpp"

namespace opineq {

inline constexpr std::uint64_t kDefaultSeed = 0x0b5e55edULL;

/// True iff every pairwise commutator satisfies
/// ||[xi, xj]|| <= rtol (1 + ||xi|| ||xj||).  Throws DimensionError when the
/// members disagree in size.
bool check_commuting(std::span<const HermitianMatrix> members, const Tolerance& tol = {});

/// Ordered family of mutually commuting Hermitian matrices of one dimension.
class AbelianTuple {
 public:
  // Throws DimensionError for an empty list or mixed sizes and DomainError
  // when the members do not commute at tolerance.
  explicit AbelianTuple(std::vector<HermitianMatrix> members, const Tolerance& tol = {});

  std::size_t arity() const { return members_.size(); }
  Eigen::Index dim() const { return members_.front().dim(); }
  const HermitianMatrix& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<HermitianMatrix>& members() const { return members_; }

 private:
  std::vector<HermitianMatrix> members_;
};

class Cube {
 public:
  Cube() = default;
  explicit Cube(std::vector<Interval> intervals);
  static Cube uniform(std::size_t n, Interval interval);

  std::size_t arity() const { return intervals_.size(); }
  const Interval& operator[](std::size_t i) const { return intervals_[i]; }
  const std::vector<Interval>& intervals() const { return intervals_; }

  bool contains(std::span<const double> point, double rtol = 0.0) const;
  std::vector<double> clamp(std::span<const double> point) const;

 private:
  std::vector<Interval> intervals_;
};

struct FunctionFlags {
  bool convex = false;
  bool concave = false;
  bool separately_increasing = false;
};

/// Real function of n real variables on a declared cube, carrying declared
/// shape flags.  The flags are not inferred; see verify_flags.
class CubeFunction {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;

  CubeFunction(std::string name, Cube domain, Evaluator evaluator, FunctionFlags flags);

  const std::string& name() const { return name_; }
  std::size_t arity() const { return domain_.arity(); }
  const Cube& domain() const { return domain_; }
  const FunctionFlags& flags() const { return flags_; }
  bool is_affine() const { return flags_.convex && flags_.concave; }

  double operator()(std::span<const double> point) const;
  double operator()(std::initializer_list<double> point) const {
    return (*this)(std::span<const double>(point.begin(), point.size()));
  }

 private:
  std::string name_;
  Cube domain_;
  Evaluator evaluator_;
  FunctionFlags flags_;
};

struct JointSpectrum {
  Matrix basis;                             // m x m unitary
  std::vector<std::vector<double>> points;  // m rows of n joint eigenvalues
};

/// Common eigenbasis of a commuting tuple.
///
/// Diagonalizes a random combination sum c_i x_i / ||x_i|| with standard
/// normal c_i drawn from `seed`, then verifies that every member is diagonal
/// in the resulting basis.  After three reseeded retries it falls back to
/// deterministic block refinement: diagonalize x1, then split each of its
/// eigenvalue clusters with x2, and so on.  Throws NumericalError when the
/// residual still exceeds rtol (1 + ||xi||).
JointSpectrum joint_diagonalize(const AbelianTuple& t, const Tolerance& tol = {},
                                std::uint64_t seed = kDefaultSeed);

// Block-refinement route on its own (used as the fallback above).
JointSpectrum joint_diagonalize_refine(const AbelianTuple& t, const Tolerance& tol = {});

// Largest off-diagonal residual of basis^* xi basis, relative to 1 + ||xi||.
double joint_residual(const AbelianTuple& t, const Matrix& basis);

bool spectrum_in_cube(const AbelianTuple& t, const Cube& c, const Tolerance& tol = {});

/// f(x) = U diag(f(points)) U^*.  Throws DomainError when the joint spectrum
/// leaves f's cube (beyond tolerance) and DimensionError on arity mismatch.
HermitianMatrix apply_cube_function(const CubeFunction& f, const AbelianTuple& t, const Tolerance& tol = {},
                                    std::uint64_t seed = kDefaultSeed);

/// [xi, yj] == [xj, yi] for all i, j, at tolerance
/// rtol (1 + ||xi|| ||yj|| + ||xj|| ||yi||).  When the members of both lists
/// commute, a positive answer is cross-checked against commutativity of the
/// midpoint tuple (x + y)/2 and a disagreement throws std::logic_error.
bool check_compatible(std::span<const HermitianMatrix> x, std::span<const HermitianMatrix> y,
                      const Tolerance& tol = {});
inline bool check_compatible(const AbelianTuple& x, const AbelianTuple& y, const Tolerance& tol = {}) {
  return check_compatible(std::span<const HermitianMatrix>(x.members()),
                          std::span<const HermitianMatrix>(y.members()), tol);
}

}  // namespace opineq
