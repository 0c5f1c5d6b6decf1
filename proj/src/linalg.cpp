#include "opineq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace opineq {

void Tolerance::validate() const {
  if (!(rtol >= 0.0 && rtol < 1e-2)) {
    throw ConfigError("rtol must lie in [0, 1e-2), got " + std::to_string(rtol));
  }
  if (quadrature_nodes < 1) {
    throw ConfigError("quadrature_nodes must be positive");
  }
}

double Interval::slack(double rtol) const {
  double s = 1.0;
  if (std::isfinite(lo)) s += std::abs(lo);
  if (std::isfinite(hi)) s += std::abs(hi);
  return rtol * s;
}

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix() : m_(Matrix::Zero(1, 1)) {}

HermitianMatrix::HermitianMatrix(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("Hermitian matrix must be square, got " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
  if (a.rows() < 1) {
    throw DimensionError("Hermitian matrix must have dimension >= 1");
  }
  const Eigen::Index n = a.rows();
  m_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m_(i, i) = Complex(a(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      m_(i, j) = v;
      m_(j, i) = std::conj(v);
    }
  }
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index dim) { return HermitianMatrix(Matrix::Zero(dim, dim)); }

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
  return HermitianMatrix(Matrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = values[static_cast<std::size_t>(i)];
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

HermitianMatrix HermitianMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n) throw DimensionError("ragged matrix literal");
    Eigen::Index j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return HermitianMatrix(m);
}

double HermitianMatrix::trace() const { return m_.diagonal().real().sum(); }

std::vector<double> HermitianMatrix::diagonal_values() const {
  std::vector<double> d(static_cast<std::size_t>(dim()));
  for (Eigen::Index i = 0; i < dim(); ++i) d[static_cast<std::size_t>(i)] = m_(i, i).real();
  return d;
}

double HermitianMatrix::off_diagonal_norm() const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < dim(); ++i)
    for (Eigen::Index j = 0; j < dim(); ++j)
      if (i != j) s += std::norm(m_(i, j));
  return std::sqrt(s);
}

HermitianMatrix HermitianMatrix::congruence(const Matrix& a) const {
  if (a.rows() != dim()) throw DimensionError("congruence: size mismatch");
  return HermitianMatrix(Matrix(a.adjoint() * m_ * a));
}

double HermitianMatrix::expectation(const Vector& v) const {
  if (v.size() != dim()) throw DimensionError("expectation: size mismatch");
  return v.dot(m_ * v).real();
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  if (o.dim() != dim()) throw DimensionError("matrix sum: size mismatch");
  return HermitianMatrix(Matrix(m_ + o.m_));
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  if (o.dim() != dim()) throw DimensionError("matrix difference: size mismatch");
  return HermitianMatrix(Matrix(m_ - o.m_));
}

HermitianMatrix HermitianMatrix::operator*(double s) const { return HermitianMatrix(Matrix(m_ * s)); }

HermitianMatrix EigenSystem::reconstruct() const {
  const auto n = basis.rows();
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = eigenvalues[static_cast<std::size_t>(i)];
  return HermitianMatrix(Matrix(basis * d.cast<Complex>().asDiagonal() * basis.adjoint()));
}

// ---------------------------------------------------------------------------
// Jacobi eigensolver

namespace {

double off_norm(const Matrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Annihilates a(p,q) with the unitary G = D R, where D = diag(1, conj(e))
// rotates the phase e of a(p,q) away and R is the real Jacobi rotation
// [[c, s], [-s, c]] of the resulting real symmetric 2x2 block.
void rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q, bool annihilate_small) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  if (annihilate_small && std::abs(app) + 100.0 * r == std::abs(app) &&
      std::abs(aqq) + 100.0 * r == std::abs(aqq)) {
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    return;
  }
  const Complex e = apq / r;
  const double theta = (aqq - app) / (2.0 * r);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex ce = std::conj(e);

  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s * ce * akq;
    a(k, q) = s * akp + c * ce * akq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s * e * aqk;
    a(q, k) = s * apk + c * e * aqk;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - s * ce * vkq;
    v(k, q) = s * vkp + c * ce * vkq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
}

}  // namespace

EigenSystem eig_hermitian(const HermitianMatrix& input) {
  const Eigen::Index n = input.dim();
  Matrix a = input.matrix();
  if (!a.allFinite()) throw DomainError("eig_hermitian: matrix has non-finite entries");
  Matrix v = Matrix::Identity(n, n);
  const double threshold = 1e-14 * a.norm();

  int sweep = 0;
  while (off_norm(a) > threshold) {
    if (sweep == kJacobiMaxSweeps) {
      throw NumericalError("Jacobi eigensolver did not converge after " + std::to_string(kJacobiMaxSweeps) +
                           " sweeps (dim " + std::to_string(n) + ")");
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q, sweep >= 4);
    ++sweep;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() > a(j, j).real(); });

  EigenSystem es;
  es.eigenvalues.resize(static_cast<std::size_t>(n));
  es.basis.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    es.eigenvalues[static_cast<std::size_t>(k)] = a(src, src).real();
    es.basis.col(k) = v.col(src);
  }
  return es;
}

std::vector<double> eigenvalues(const HermitianMatrix& a) { return eig_hermitian(a).eigenvalues; }

double op_norm(const HermitianMatrix& a) {
  const auto ev = eigenvalues(a);
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

double lambda_min(const HermitianMatrix& a) { return eigenvalues(a).back(); }

bool is_psd(const HermitianMatrix& a, const Tolerance& tol) {
  const auto ev = eigenvalues(a);
  const double norm = std::max(std::abs(ev.front()), std::abs(ev.back()));
  return ev.back() >= -tol.rtol * (1.0 + norm);
}

bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerance& tol) {
  if (a.dim() != b.dim()) {
    throw DimensionError("loewner_leq: dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
  return is_psd(b - a, tol);
}

HermitianMatrix hermitian_function(const HermitianMatrix& a, const std::function<double(double)>& g,
                                   const Interval& domain, const Tolerance& tol) {
  const EigenSystem es = eig_hermitian(a);
  const double norm = std::max(std::abs(es.eigenvalues.front()), std::abs(es.eigenvalues.back()));
  const double slack = tol.rtol * (1.0 + norm);
  const auto n = a.dim();
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lam = es.eigenvalues[static_cast<std::size_t>(i)];
    if (!domain.contains(lam, slack)) {
      throw DomainError("hermitian_function: eigenvalue " + std::to_string(lam) + " outside [" +
                        std::to_string(domain.lo) + ", " + std::to_string(domain.hi) + "]");
    }
    const double val = g(domain.clamp(lam));
    if (!std::isfinite(val)) {
      throw DomainError("hermitian_function: non-finite value at eigenvalue " + std::to_string(lam));
    }
    d(i) = val;
  }
  return HermitianMatrix(Matrix(es.basis * d.cast<Complex>().asDiagonal() * es.basis.adjoint()));
}

HermitianMatrix matrix_power(const HermitianMatrix& a, double p, const Tolerance& tol) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw DomainError("matrix_power: exponent must be a finite nonnegative real");
  }
  if (p == 0.0 || p == 1.0) {
    if (!is_psd(a, tol)) throw DomainError("matrix_power: matrix is not positive semidefinite");
    return p == 0.0 ? HermitianMatrix::identity(a.dim()) : a;
  }
  return hermitian_function(
      a, [p](double t) { return std::pow(t, p); }, Interval{0.0, std::numeric_limits<double>::infinity()}, tol);
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

double commutator_norm(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("commutator: size mismatch");
  return commutator(a.matrix(), b.matrix()).norm();
}

HermitianMatrix hermitian_part(const Matrix& a) { return HermitianMatrix(a); }

}  // namespace opineq
