#include "opineq/means.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace opineq {

namespace {

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b, const char* what) {
  if (a.dim() != b.dim()) throw DimensionError(std::string(what) + ": dimension mismatch");
}

// lambda_min / (1 + ||a||) from one eigendecomposition.
double relative_floor(const std::vector<double>& ev) {
  return ev.back() / (1.0 + std::max(std::abs(ev.front()), std::abs(ev.back())));
}

HermitianMatrix closed_form_mean(const HermitianMatrix& base, const HermitianMatrix& other) {
  const EigenSystem es = eig_hermitian(base);
  const auto n = base.dim();
  Eigen::VectorXd root(n), inv_root(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lam = es.eigenvalues[static_cast<std::size_t>(i)];
    root(i) = std::sqrt(lam);
    inv_root(i) = 1.0 / std::sqrt(lam);
  }
  const Matrix half = es.basis * root.cast<Complex>().asDiagonal() * es.basis.adjoint();
  const Matrix inv_half = es.basis * inv_root.cast<Complex>().asDiagonal() * es.basis.adjoint();
  const HermitianMatrix inner = other.congruence(inv_half);
  return matrix_power(inner, 0.5).congruence(half);
}

}  // namespace

HermitianMatrix geometric_mean(const HermitianMatrix& x, const HermitianMatrix& y, const Tolerance& tol) {
  require_same_dim(x, y, "geometric_mean");
  const auto ex = eigenvalues(x);
  const auto ey = eigenvalues(y);
  const double nx = std::max(std::abs(ex.front()), std::abs(ex.back()));
  const double ny = std::max(std::abs(ey.front()), std::abs(ey.back()));
  if (ex.back() < -tol.rtol * (1.0 + nx) || ey.back() < -tol.rtol * (1.0 + ny)) {
    throw DomainError("geometric_mean: arguments must be positive semidefinite");
  }

  const HermitianMatrix pair[] = {x, y};
  if (check_commuting(pair, tol)) {
    return hermitian_part(Matrix(matrix_power(x, 0.5, tol).matrix() * matrix_power(y, 0.5, tol).matrix()));
  }

  const bool x_is_base = relative_floor(ex) >= relative_floor(ey);
  HermitianMatrix base = x_is_base ? x : y;
  HermitianMatrix other = x_is_base ? y : x;
  const double floor = x_is_base ? ex.back() : ey.back();
  const double base_norm = x_is_base ? nx : ny;
  if (floor <= tol.rtol * (1.0 + base_norm)) {
    const double eps = 1e-10 * (1.0 + nx + ny);
    const auto shift = HermitianMatrix::identity(x.dim()) * eps;
    base = base + shift;
    other = other + shift;
  }
  return closed_form_mean(base, other);
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int nodes, double a, double b) {
  if (nodes < 1) throw DomainError("gauss_legendre: need at least one node");
  const auto n = static_cast<std::size_t>(nodes);
  std::vector<double> x(n), w(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * static_cast<double>(k) - 1.0) * z * p1 - (static_cast<double>(k) - 1.0) * p2) /
             static_cast<double>(k);
      }
      dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) <= 1e-15) break;
    }
    x[i] = mid - half * z;
    x[n - 1 - i] = mid + half * z;
    w[i] = 2.0 * half / ((1.0 - z * z) * dp * dp);
    w[n - 1 - i] = w[i];
  }
  return {x, w};
}

HermitianMatrix geometric_mean_quadrature(const HermitianMatrix& x, const HermitianMatrix& y, const Tolerance& tol) {
  require_same_dim(x, y, "geometric_mean_quadrature");
  const auto n = x.dim();
  for (const HermitianMatrix* m : {&x, &y}) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m->matrix(), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const double scale = 1.0 + std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
    if (!(ev(0) > tol.rtol * scale)) {
      throw DomainError("geometric_mean_quadrature: arguments must be positive definite");
    }
  }
  const Matrix id = Matrix::Identity(n, n);
  const Matrix x_inv = x.matrix().llt().solve(id);
  const Matrix y_inv = y.matrix().llt().solve(id);

  const auto [nodes, weights] = gauss_legendre(tol.quadrature_nodes, 0.0, std::numbers::pi / 2.0);
  Matrix sum = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double c = std::cos(nodes[k]);
    const double s = std::sin(nodes[k]);
    const Matrix m = (c * c) * x_inv + (s * s) * y_inv;
    sum += weights[k] * Matrix(m.llt().solve(id));
  }
  return HermitianMatrix(Matrix(sum * (2.0 / std::numbers::pi)));
}

HermitianMatrix root_product_chain(const AbelianTuple& t, const Tolerance& tol) {
  for (const auto& m : t.members()) {
    if (!is_psd(m, tol)) throw DomainError("root_product_chain: members must be positive semidefinite");
  }
  if (t.arity() == 1) return t[0];
  HermitianMatrix z = geometric_mean(t[0], t[1], tol);
  double exponent = 0.5;
  for (std::size_t k = 2; k < t.arity(); ++k) {
    z = geometric_mean(z, matrix_power(t[k], exponent, tol), tol);
    exponent *= 0.5;
  }
  return z;
}

Verdict order_verdict(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerance& tol) {
  require_same_dim(a, b, "order_verdict");
  const auto ev = eigenvalues(b - a);
  const double norm = std::max(std::abs(ev.front()), std::abs(ev.back()));
  VerdictBuilder vb(tol.rtol);
  vb.leq(0.0, ev.back(), 1.0 + norm);
  return vb.finish();
}

Verdict check_lowner_heinz(const HermitianMatrix& x, const HermitianMatrix& y, double alpha, const Tolerance& tol) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) return Verdict::make_invalid("alpha outside [0, 1]");
  if (x.dim() != y.dim()) return Verdict::make_invalid("dimension mismatch");
  if (!is_psd(x, tol)) return Verdict::make_invalid("x is not positive semidefinite");
  if (!loewner_leq(x, y, tol)) return Verdict::make_invalid("x <= y does not hold");
  Verdict v = order_verdict(matrix_power(x, alpha, tol), matrix_power(y, alpha, tol), tol);
  v.audit["alpha"] = alpha;
  return v;
}

HermitianMatrix power_product(const AbelianTuple& t, std::span<const double> exponents, const Tolerance& tol) {
  if (exponents.size() != t.arity()) throw DimensionError("power_product: exponent count mismatch");
  Matrix prod = Matrix::Identity(t.dim(), t.dim());
  for (std::size_t i = 0; i < t.arity(); ++i) prod = prod * matrix_power(t[i], exponents[i], tol).matrix();
  return hermitian_part(prod);
}

Verdict check_trace_power_monotone(const AbelianTuple& x, const AbelianTuple& y, std::span<const double> exponents,
                                   const DiagonalState& rho, const Tolerance& tol) {
  if (x.arity() != y.arity() || exponents.size() != x.arity()) return Verdict::make_invalid("arity mismatch");
  if (x.dim() != y.dim() || x.dim() != rho.dim()) return Verdict::make_invalid("dimension mismatch");
  for (double p : exponents) {
    if (!(p >= 0.0) || !std::isfinite(p)) return Verdict::make_invalid("negative or non-finite exponent");
  }
  for (std::size_t i = 0; i < x.arity(); ++i) {
    if (!is_psd(x[i], tol)) return Verdict::make_invalid("x member " + std::to_string(i) + " is not PSD");
    if (!loewner_leq(x[i], y[i], tol)) return Verdict::make_invalid("x <= y fails at member " + std::to_string(i));
    if (!in_centralizer(rho, x[i], tol) || !in_centralizer(rho, y[i], tol)) {
      return Verdict::make_invalid("member " + std::to_string(i) + " outside the centralizer");
    }
  }
  const double lhs = state_trace(rho, power_product(x, exponents, tol));
  const double rhs = state_trace(rho, power_product(y, exponents, tol));
  VerdictBuilder vb(tol.rtol);
  vb.leq(lhs, rhs);
  return vb.finish();
}

Verdict check_trace_monotone_single(const HermitianMatrix& x, const HermitianMatrix& y, const CubeFunction& g,
                                    const DiagonalState& rho, const Tolerance& tol) {
  if (g.arity() != 1) return Verdict::make_invalid("g must be a function of one variable");
  if (!g.flags().separately_increasing) return Verdict::make_invalid("g is not flagged increasing");
  if (x.dim() != y.dim() || x.dim() != rho.dim()) return Verdict::make_invalid("dimension mismatch");
  if (!loewner_leq(x, y, tol)) return Verdict::make_invalid("x <= y does not hold");
  if (!in_centralizer(rho, x, tol) || !in_centralizer(rho, y, tol)) {
    return Verdict::make_invalid("x or y outside the centralizer");
  }
  const AbelianTuple tx({x}, tol);
  const AbelianTuple ty({y}, tol);
  if (!spectrum_in_cube(tx, g.domain(), tol) || !spectrum_in_cube(ty, g.domain(), tol)) {
    return Verdict::make_invalid("spectrum outside the domain of g");
  }
  const double lhs = state_trace(rho, apply_cube_function(g, tx, tol));
  const double rhs = state_trace(rho, apply_cube_function(g, ty, tol));
  VerdictBuilder vb(tol.rtol);
  vb.leq(lhs, rhs);
  return vb.finish();
}

}  // namespace opineq
