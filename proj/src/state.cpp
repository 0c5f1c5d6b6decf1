#include "opineq/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace opineq {

DiagonalState::DiagonalState(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw DimensionError("diagonal state needs dimension >= 1");
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) throw DomainError("diagonal state weights must be finite and nonnegative");
  }
  if (!(total_mass() > 0.0)) throw DomainError("diagonal state has zero total mass");
}

DiagonalState DiagonalState::uniform(Eigen::Index dim) {
  return DiagonalState(std::vector<double>(static_cast<std::size_t>(dim), 1.0));
}

double DiagonalState::total_mass() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

bool DiagonalState::is_faithful() const {
  return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w > 0.0; });
}

HermitianMatrix DiagonalState::density() const { return HermitianMatrix::diagonal(weights_); }

double state_trace(const DiagonalState& rho, const Matrix& a) {
  if (a.rows() != rho.dim() || a.cols() != rho.dim()) throw DimensionError("state_trace: dimension mismatch");
  double s = 0.0;
  for (Eigen::Index i = 0; i < rho.dim(); ++i) s += rho.weight(static_cast<std::size_t>(i)) * a(i, i).real();
  return s;
}

double state_trace(const DiagonalState& rho, const HermitianMatrix& a) { return state_trace(rho, a.matrix()); }

bool in_centralizer(const DiagonalState& rho, const HermitianMatrix& a, const Tolerance& tol) {
  if (a.dim() != rho.dim()) throw DimensionError("in_centralizer: dimension mismatch");
  const double wmax = *std::max_element(rho.weights().begin(), rho.weights().end());
  return commutator_norm(rho.density(), a) <= tol.rtol * (1.0 + wmax * op_norm(a));
}

}  // namespace opineq
