#pragma once

// Operator geometric mean, its integral representation, the root-product
// chain and the trace monotonicity checks built on them.

#include <utility>
#include <vector>

#include "opineq/abelian.hpp"
#include "opineq/state.hpp"
#include "opineq/verdict.hpp"

namespace opineq {

/// x # y = x^{1/2} (x^{-1/2} y x^{-1/2})^{1/2} x^{1/2} for PSD x, y.
///
/// Commuting arguments take the joint route, the Hermitian part of
/// x^{1/2} y^{1/2}, which is exact and needs no inverse.  Otherwise the
/// closed form is evaluated around whichever argument is better conditioned
/// (the mean is symmetric); if that one is still singular at tolerance,
/// both are shifted by eps I with eps = 1e-10 (1 + ||x|| + ||y||).
HermitianMatrix geometric_mean(const HermitianMatrix& x, const HermitianMatrix& y, const Tolerance& tol = {});

/// (1/pi) int_0^{pi/2} 2 (cos^2 t x^{-1} + sin^2 t y^{-1})^{-1} dt, the
/// integral representation of x # y after the substitution lambda = tan^2 t,
/// by Gauss-Legendre with tol.quadrature_nodes nodes.  Uses Cholesky
/// inverses only, so it stays independent of the eigensolver.  Requires
/// strictly positive definite arguments (DomainError otherwise).
HermitianMatrix geometric_mean_quadrature(const HermitianMatrix& x, const HermitianMatrix& y,
                                          const Tolerance& tol = {});

// Gauss-Legendre nodes and weights on [a, b].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int nodes, double a, double b);

/// x1^{1/2^{n-1}} ... xn^{1/2^{n-1}} built as z = x1 # x2, then
/// z = z # xk^{1/2^{k-2}} for k = 3..n.
HermitianMatrix root_product_chain(const AbelianTuple& t, const Tolerance& tol = {});

// Order verdict for a <= b: gap = lambda_min(b - a), slack rtol (1 + ||b - a||).
Verdict order_verdict(const HermitianMatrix& a, const HermitianMatrix& b, const Tolerance& tol = {});

/// x^alpha <= y^alpha for 0 <= x <= y and alpha in [0, 1].  Violated
/// preconditions give an invalid verdict, never a failure.
Verdict check_lowner_heinz(const HermitianMatrix& x, const HermitianMatrix& y, double alpha,
                           const Tolerance& tol = {});

// Hermitian part of x1^{p1} ... xn^{pn}.
HermitianMatrix power_product(const AbelianTuple& t, std::span<const double> exponents, const Tolerance& tol = {});

/// phi(x1^{p1} ... xn^{pn}) <= phi(y1^{p1} ... yn^{pn}) for abelian PSD
/// tuples x <= y in the centralizer of rho.
Verdict check_trace_power_monotone(const AbelianTuple& x, const AbelianTuple& y, std::span<const double> exponents,
                                   const DiagonalState& rho, const Tolerance& tol = {});

/// phi(g(x)) <= phi(g(y)) for x <= y in the centralizer and g increasing
/// (g must be of arity one and flagged separately increasing).
Verdict check_trace_monotone_single(const HermitianMatrix& x, const HermitianMatrix& y, const CubeFunction& g,
                                    const DiagonalState& rho, const Tolerance& tol = {});

}  // namespace opineq
