#pragma once

// Independent oracles for the unit tests.  Spectra come from Eigen's
// SelfAdjointEigenSolver, never from the library's Jacobi solver.

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "opineq/linalg.hpp"

namespace oracle {

using opineq::Complex;
using opineq::Matrix;

inline std::vector<double> eigenvalues_desc(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

inline double lambda_min(const Matrix& a) { return eigenvalues_desc(a).back(); }

inline Matrix apply(const Matrix& a, const std::function<double(double)>& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  Eigen::VectorXd d = es.eigenvalues();
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = g(d(i));
  return es.eigenvectors() * d.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

inline Matrix sqrtm(const Matrix& a) {
  return oracle::apply(a, [](double v) { return std::sqrt(std::max(v, 0.0)); });
}

// x # y from the closed form with Eigen's solver.
inline Matrix geometric_mean(const Matrix& x, const Matrix& y) {
  const Matrix xh = sqrtm(x);
  const Matrix xih = oracle::apply(x, [](double v) { return 1.0 / std::sqrt(v); });
  return xh * sqrtm(Matrix(xih * y * xih)) * xh;
}

struct Random {
  std::mt19937_64 gen;
  explicit Random(std::uint64_t seed) : gen(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }

  Matrix gaussian(Eigen::Index r, Eigen::Index c) {
    std::normal_distribution<double> n;
    Matrix m(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
      for (Eigen::Index i = 0; i < r; ++i) m(i, j) = Complex(n(gen), n(gen));
    return m;
  }
  Matrix hermitian(Eigen::Index d) {
    const Matrix g = gaussian(d, d);
    return (g + g.adjoint()) / 2.0;
  }
  Matrix unitary(Eigen::Index d) {
    Eigen::HouseholderQR<Matrix> qr(gaussian(d, d));
    return qr.householderQ() * Matrix::Identity(d, d);
  }
  // U diag(ev) U^* with ev uniform in [lo, hi]
  Matrix with_spectrum(const Matrix& u, double lo, double hi) {
    Eigen::VectorXd d(u.rows());
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = uniform(lo, hi);
    return u * d.cast<Complex>().asDiagonal() * u.adjoint();
  }
  Matrix positive_definite(Eigen::Index d, double lo = 0.1, double hi = 3.0) {
    return with_spectrum(unitary(d), lo, hi);
  }
};

inline double rel_diff(const Matrix& a, const Matrix& b) { return (a - b).norm() / (1.0 + b.norm()); }

}  // namespace oracle
