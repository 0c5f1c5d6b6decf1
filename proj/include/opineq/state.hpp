#pragma once

#include <span>
#include <vector>

#include "opineq/linalg.hpp"

namespace opineq {

/// Diagonal density rho defining phi(a) = sum_s rho_s a_ss on M_m.  The
/// diagonal algebra lies in the centralizer of phi, and a matrix is in the
/// centralizer exactly when it commutes with diag(rho).
class DiagonalState {
 public:
  // Throws DomainError unless weights are finite, nonnegative and not all zero.
  explicit DiagonalState(std::vector<double> weights);
  static DiagonalState uniform(Eigen::Index dim);

  Eigen::Index dim() const { return static_cast<Eigen::Index>(weights_.size()); }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t s) const { return weights_[s]; }
  double total_mass() const;
  bool is_faithful() const;  // every weight positive
  HermitianMatrix density() const;

 private:
  std::vector<double> weights_;
};

double state_trace(const DiagonalState& rho, const HermitianMatrix& a);
// Same functional on a general square matrix (real part of the weighted diagonal).
double state_trace(const DiagonalState& rho, const Matrix& a);

// ||[diag(rho), a]|| <= rtol (1 + max rho ||a||)
bool in_centralizer(const DiagonalState& rho, const HermitianMatrix& a, const Tolerance& tol = {});

}  // namespace opineq
