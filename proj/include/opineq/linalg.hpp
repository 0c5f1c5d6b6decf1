#pragma once

// Dense Hermitian linear algebra: a self-contained complex Jacobi
// eigensolver, positive semidefiniteness, the Loewner order and
// one-variable functional calculus.

#include <complex>
#include <functional>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "opineq/errors.hpp"

namespace opineq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct Tolerance {
  double rtol = 1e-9;
  int quadrature_nodes = 128;

  // Throws ConfigError unless 0 <= rtol < 1e-2 and quadrature_nodes >= 1.
  void validate() const;
};

/// Dense square complex matrix with exact Hermitian symmetry.
///
/// Construction symmetrizes its argument: the strictly upper entries become
/// the average of a(i,j) and conj(a(j,i)), the lower triangle is filled with
/// their conjugates and the diagonal keeps only its real part, so
/// m(i,j) == conj(m(j,i)) holds bit for bit.
class HermitianMatrix {
 public:
  HermitianMatrix();  // 1x1 zero
  explicit HermitianMatrix(const Matrix& a);

  static HermitianMatrix zero(Eigen::Index dim);
  static HermitianMatrix identity(Eigen::Index dim);
  static HermitianMatrix diagonal(std::span<const double> values);
  static HermitianMatrix diagonal(std::initializer_list<double> values);
  // Row-major literal, real or complex entries.
  static HermitianMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  double trace() const;
  std::vector<double> diagonal_values() const;
  // Frobenius norm of the strictly off-diagonal part.
  double off_diagonal_norm() const;

  // a^* (this) a for a square matrix a of matching size.
  HermitianMatrix congruence(const Matrix& a) const;
  // <this v, v>
  double expectation(const Vector& v) const;

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;
  friend HermitianMatrix operator*(double s, const HermitianMatrix& h) { return h * s; }

 private:
  Matrix m_;
};

struct EigenSystem {
  std::vector<double> eigenvalues;  // non-increasing
  Matrix basis;                     // unitary, columns are eigenvectors

  HermitianMatrix reconstruct() const;
};

// Real interval, possibly unbounded; used as the domain of a scalar function.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double v, double slack = 0.0) const { return v >= lo - slack && v <= hi + slack; }
  double clamp(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
  // rtol * (1 + |lo| + |hi|), ignoring infinite endpoints.
  double slack(double rtol) const;
};

inline constexpr int kJacobiMaxSweeps = 100;

/// Cyclic complex Jacobi rotations.  Stops once the off-diagonal Frobenius
/// norm drops below 1e-14 ||a||_F; throws NumericalError after
/// kJacobiMaxSweeps sweeps.
EigenSystem eig_hermitian(const HermitianMatrix& a);

std::vector<double> eigenvalues(const HermitianMatrix& a);
double op_norm(const HermitianMatrix& a);
double lambda_min(const HermitianMatrix& a);

bool is_psd(const HermitianMatrix& a, const Tolerance& tol = {});
// Throws DimensionError on size mismatch.
bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerance& tol = {});

// g applied to the spectrum.  Eigenvalues within the domain's slack are
// clamped into it; anything further out, or a non-finite value of g, is a
// DomainError.
HermitianMatrix hermitian_function(const HermitianMatrix& a, const std::function<double(double)>& g,
                                   const Interval& domain = {}, const Tolerance& tol = {});

// a^p for PSD a and p >= 0, with 0^0 = 1 and negative rounding noise in the
// spectrum clamped to zero.
HermitianMatrix matrix_power(const HermitianMatrix& a, double p, const Tolerance& tol = {});

Matrix commutator(const Matrix& a, const Matrix& b);
double commutator_norm(const HermitianMatrix& a, const HermitianMatrix& b);

// Hermitian part (a + a^*)/2 of a square matrix.
HermitianMatrix hermitian_part(const Matrix& a);

}  // namespace opineq
