#pragma once

// Conditional expectation onto the diagonal algebra, discrete unital column
// fields, the spectral measure mu_xi, and the Jensen-type checks.

#include <functional>
#include <span>
#include <vector>

#include "opineq/abelian.hpp"
#include "opineq/state.hpp"
#include "opineq/verdict.hpp"

namespace opineq {

/// Phi(a) for the state rho: values[s] = a_ss wherever rho_s > 0.  Indices
/// with zero weight are listed in `undefined` and carry the value 0.
struct DiagonalFunction {
  std::vector<double> values;
  std::vector<std::size_t> undefined;

  bool defined_at(std::size_t s) const;
};

DiagonalFunction pinch(const DiagonalState& rho, const HermitianMatrix& a);

struct FieldAtom {
  double weight = 1.0;
  Matrix a;
};

/// Finite family {(w_t, a_t)} with sum_t w_t a_t^* a_t = 1.
class ColumnField {
 public:
  // Throws DomainError when weights are not positive or the unitality defect
  // exceeds rtol * atom count; DimensionError on mixed shapes.
  explicit ColumnField(std::vector<FieldAtom> atoms, const Tolerance& tol = {});

  // a_t = b_t S^{-1/2} with S = sum_t w_t b_t^* b_t.
  static ColumnField normalized(std::vector<double> weights, std::vector<Matrix> bs);
  static ColumnField trivial(Eigen::Index dim);  // single atom (1, identity)

  std::size_t size() const { return atoms_.size(); }
  Eigen::Index dim() const { return atoms_.front().a.rows(); }
  const std::vector<FieldAtom>& atoms() const { return atoms_; }
  const FieldAtom& operator[](std::size_t t) const { return atoms_[t]; }

  // ||sum w_t a_t^* a_t - 1||_F
  double unitality_defect() const;

  // sum_t w_t a_t^* m_t a_t
  HermitianMatrix compress(std::span<const HermitianMatrix> per_atom) const;

 private:
  std::vector<FieldAtom> atoms_;
};

using TupleField = std::vector<AbelianTuple>;

struct Compression {
  std::vector<HermitianMatrix> members;
  bool abelian = false;
};

/// y_i = sum_t w_t a_t^* x_{it} a_t.  Throws DimensionError when the fields
/// are misaligned.
Compression compress(const ColumnField& field, const TupleField& tf, const Tolerance& tol = {});

// sum_t w_t a_t^* f(x_t) a_t
HermitianMatrix compress_function(const CubeFunction& f, const ColumnField& field, const TupleField& tf,
                                  const Tolerance& tol = {});

struct SpectralMeasure {
  std::vector<std::vector<double>> support;
  std::vector<double> masses;

  double total_mass() const;
  double integrate(const std::function<double(std::span<const double>)>& g) const;
  // int s_i dmu
  double moment(std::size_t i) const;
};

/// Atom t contributes mass w_t |<u_j, a_t xi>|^2 at the joint eigenvalue
/// point of its j-th common eigenvector u_j.  Throws DomainError for a
/// non-unit xi.
SpectralMeasure build_mu_xi(const ColumnField& field, const TupleField& tf, const Vector& xi,
                            const Tolerance& tol = {});

/// f(<y1 xi, xi>, ..., <yn xi, xi>) <= <sum_t w_t a_t^* f(x_t) a_t xi, xi>
/// for convex f.  The audit records the middle quantity int f dmu_xi and
/// the total mass of mu_xi.
Verdict check_jensen_expectation(const CubeFunction& f, const ColumnField& field, const TupleField& tf,
                                 const Vector& xi, const Tolerance& tol = {});

/// f(<x1 xi, xi>, ..., <xn xi, xi>) <= <f(x) xi, xi>, evaluated directly.
Verdict check_mond_pecaric(const CubeFunction& f, const AbelianTuple& t, const Vector& xi,
                           const Tolerance& tol = {});

/// Phi(f(x)) <= f(Phi(x1), ..., Phi(xn)) pointwise for concave f.
Verdict check_phi_concave_jensen(const CubeFunction& f, const AbelianTuple& t, const DiagonalState& rho,
                                 const Tolerance& tol = {});

/// Phi(f(x)) <= f(Phi(x)) <= f(Phi(y)) = f(y) pointwise and
/// phi(f(x)) <= phi(f(y)), for f concave and separately increasing, x <= y
/// and y diagonal.
Verdict check_phi_monotone_chain(const CubeFunction& f, const AbelianTuple& x, const AbelianTuple& y,
                                 const DiagonalState& rho, const Tolerance& tol = {});

/// f(Phi(y1), ..., Phi(yn)) <= Phi(sum_t w_t a_t^* f(x_t) a_t) pointwise
/// for convex f, where y is the compression of the tuple field.
Verdict check_phi_jensen_field(const CubeFunction& f, const ColumnField& field, const TupleField& tf,
                               const DiagonalState& rho, const Tolerance& tol = {});

struct ExampleReport {
  double c = 0.0;
  double t = 0.0;
  double lambda = 0.0;
  HermitianMatrix x;
  HermitianMatrix y;
  HermitianMatrix x_squared;
  HermitianMatrix phi_x_squared;  // diagonal matrix of Phi(x^2), trace state
  HermitianMatrix y_squared;

  double order_margin = 0.0;          // lambda_min(y - x)
  bool strict_order = false;          // (i) x < y
  bool pinching_claim_applies = false;  // t < c sqrt(2)
  bool pinching_fails = false;        // (ii) Phi(x^2) is not <= y^2
  double trace_x2 = 0.0;
  double trace_y2 = 0.0;
  double middle_bound = 0.0;          // t^2 (1 + c^2 (t - c)^{-2})
  bool trace_identity = false;        // (iii) tr x^2 = 4 c^2
  bool trace_strict = false;          // (iv) tr x^2 < tr y^2
  bool middle_chain = false;          // 4c^2 < middle_bound <= tr y^2

  bool all_hold() const;
};

/// x = [[c, c], [c, c]] and y = diag(t, lambda t) with 0 < c < t and
/// lambda > c / (t - c).  Throws DomainError on other parameters.
ExampleReport reproduce_example1(double c, double t, double lambda, const Tolerance& tol = {});

}  // namespace opineq
