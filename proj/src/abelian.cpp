#include "opineq/abelian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace opineq {

namespace {

std::vector<double> norms_of(std::span<const HermitianMatrix> members) {
  std::vector<double> n;
  n.reserve(members.size());
  for (const auto& m : members) n.push_back(op_norm(m));
  return n;
}

void require_common_dim(std::span<const HermitianMatrix> members, const char* what) {
  for (const auto& m : members) {
    if (m.dim() != members.front().dim()) {
      throw DimensionError(std::string(what) + ": members have different dimensions");
    }
  }
}

bool commuting_with_norms(std::span<const HermitianMatrix> members, const std::vector<double>& norms,
                          double rtol) {
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (commutator_norm(members[i], members[j]) > rtol * (1.0 + norms[i] * norms[j])) return false;
  return true;
}

JointSpectrum spectrum_from_basis(const AbelianTuple& t, Matrix basis) {
  JointSpectrum js;
  const auto m = static_cast<std::size_t>(t.dim());
  js.points.assign(m, std::vector<double>(t.arity()));
  for (std::size_t i = 0; i < t.arity(); ++i) {
    const Matrix d = basis.adjoint() * t[i].matrix() * basis;
    for (std::size_t j = 0; j < m; ++j) {
      js.points[j][i] = d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)).real();
    }
  }
  js.basis = std::move(basis);
  return js;
}

// Refines the columns of `cols` (an orthonormal m x k block) so that members
// member..n-1 become diagonal on their span.
Matrix refine(const AbelianTuple& t, const std::vector<double>& norms, Matrix cols, std::size_t member) {
  if (member == t.arity() || cols.cols() == 1) return cols;
  const HermitianMatrix block(Matrix(cols.adjoint() * t[member].matrix() * cols));
  const EigenSystem es = eig_hermitian(block);
  Matrix rotated = cols * es.basis;

  const double gap = 1e-8 * norms[member];
  Eigen::Index start = 0;
  const Eigen::Index k = rotated.cols();
  for (Eigen::Index j = 1; j <= k; ++j) {
    const bool split = j == k || es.eigenvalues[static_cast<std::size_t>(j - 1)] -
                                         es.eigenvalues[static_cast<std::size_t>(j)] >
                                     gap;
    if (split) {
      const Eigen::Index len = j - start;
      rotated.middleCols(start, len) = refine(t, norms, rotated.middleCols(start, len), member + 1);
      start = j;
    }
  }
  return rotated;
}

}  // namespace

bool check_commuting(std::span<const HermitianMatrix> members, const Tolerance& tol) {
  if (members.empty()) return true;
  require_common_dim(members, "check_commuting");
  return commuting_with_norms(members, norms_of(members), tol.rtol);
}

AbelianTuple::AbelianTuple(std::vector<HermitianMatrix> members, const Tolerance& tol)
    : members_(std::move(members)) {
  if (members_.empty()) throw DimensionError("abelian tuple needs at least one member");
  if (!check_commuting(members_, tol)) throw DomainError("tuple members do not commute");
}

// ---------------------------------------------------------------------------
// Cube and CubeFunction

Cube::Cube(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  for (const auto& iv : intervals_) {
    if (!(iv.lo <= iv.hi)) throw DomainError("cube interval with lo > hi");
  }
}

Cube Cube::uniform(std::size_t n, Interval interval) { return Cube(std::vector<Interval>(n, interval)); }

bool Cube::contains(std::span<const double> point, double rtol) const {
  if (point.size() != arity()) throw DimensionError("cube: point arity mismatch");
  for (std::size_t i = 0; i < arity(); ++i) {
    if (!intervals_[i].contains(point[i], intervals_[i].slack(rtol))) return false;
  }
  return true;
}

std::vector<double> Cube::clamp(std::span<const double> point) const {
  std::vector<double> out(point.begin(), point.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = intervals_[i].clamp(out[i]);
  return out;
}

CubeFunction::CubeFunction(std::string name, Cube domain, Evaluator evaluator, FunctionFlags flags)
    : name_(std::move(name)), domain_(std::move(domain)), evaluator_(std::move(evaluator)), flags_(flags) {
  if (domain_.arity() == 0) throw DimensionError("cube function needs arity >= 1");
}

double CubeFunction::operator()(std::span<const double> point) const {
  if (point.size() != arity()) throw DimensionError(name_ + ": expected " + std::to_string(arity()) + " arguments");
  return evaluator_(point);
}

// ---------------------------------------------------------------------------
// Joint diagonalization

double joint_residual(const AbelianTuple& t, const Matrix& basis) {
  double worst = 0.0;
  for (const auto& x : t.members()) {
    const HermitianMatrix d(Matrix(basis.adjoint() * x.matrix() * basis));
    worst = std::max(worst, d.off_diagonal_norm() / (1.0 + op_norm(x)));
  }
  return worst;
}

JointSpectrum joint_diagonalize_refine(const AbelianTuple& t, const Tolerance& tol) {
  const auto norms = norms_of(t.members());
  Matrix basis = refine(t, norms, Matrix::Identity(t.dim(), t.dim()), 0);
  const double residual = joint_residual(t, basis);
  if (residual > tol.rtol) {
    throw NumericalError("joint diagonalization failed: residual " + std::to_string(residual));
  }
  return spectrum_from_basis(t, std::move(basis));
}

JointSpectrum joint_diagonalize(const AbelianTuple& t, const Tolerance& tol, std::uint64_t seed) {
  if (t.arity() == 1) return spectrum_from_basis(t, eig_hermitian(t[0]).basis);

  const auto norms = norms_of(t.members());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int attempt = 0; attempt < 4; ++attempt) {
    Matrix combo = Matrix::Zero(t.dim(), t.dim());
    for (std::size_t i = 0; i < t.arity(); ++i) {
      const double c = normal(rng);
      if (norms[i] > 0.0) combo += (c / norms[i]) * t[i].matrix();
    }
    Matrix basis = eig_hermitian(HermitianMatrix(combo)).basis;
    if (joint_residual(t, basis) <= tol.rtol) return spectrum_from_basis(t, std::move(basis));
  }
  return joint_diagonalize_refine(t, tol);
}

bool spectrum_in_cube(const AbelianTuple& t, const Cube& c, const Tolerance& tol) {
  if (c.arity() != t.arity()) throw DimensionError("spectrum_in_cube: arity mismatch");
  for (std::size_t i = 0; i < t.arity(); ++i) {
    const auto ev = eigenvalues(t[i]);
    const double slack = c[i].slack(tol.rtol);
    if (!c[i].contains(ev.front(), slack) || !c[i].contains(ev.back(), slack)) return false;
  }
  return true;
}

HermitianMatrix apply_cube_function(const CubeFunction& f, const AbelianTuple& t, const Tolerance& tol,
                                    std::uint64_t seed) {
  if (f.arity() != t.arity()) {
    throw DimensionError(f.name() + ": arity " + std::to_string(f.arity()) + " applied to a tuple of " +
                         std::to_string(t.arity()));
  }
  if (!spectrum_in_cube(t, f.domain(), tol)) {
    throw DomainError(f.name() + ": joint spectrum outside the domain cube");
  }
  const JointSpectrum js = joint_diagonalize(t, tol, seed);
  Eigen::VectorXd values(t.dim());
  for (Eigen::Index j = 0; j < t.dim(); ++j) {
    const auto p = f.domain().clamp(js.points[static_cast<std::size_t>(j)]);
    values(j) = f(p);
    if (!std::isfinite(values(j))) throw DomainError(f.name() + ": non-finite value on the joint spectrum");
  }
  return HermitianMatrix(Matrix(js.basis * values.cast<Complex>().asDiagonal() * js.basis.adjoint()));
}

bool check_compatible(std::span<const HermitianMatrix> x, std::span<const HermitianMatrix> y, const Tolerance& tol) {
  if (x.size() != y.size()) throw DimensionError("check_compatible: arity mismatch");
  if (x.empty()) return true;
  require_common_dim(x, "check_compatible");
  require_common_dim(y, "check_compatible");
  if (x.front().dim() != y.front().dim()) throw DimensionError("check_compatible: dimension mismatch");

  const auto nx = norms_of(x);
  const auto ny = norms_of(y);
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Matrix diff = commutator(x[i].matrix(), y[j].matrix()) - commutator(x[j].matrix(), y[i].matrix());
      if (diff.norm() > tol.rtol * (1.0 + nx[i] * ny[j] + nx[j] * ny[i])) return false;
    }
  }

  // The midpoint commutator is a quarter of [xi,xj] + [yi,yj] + ([xi,yj] - [xj,yi]),
  // so the three bounds above control it.
  if (commuting_with_norms(x, nx, tol.rtol) && commuting_with_norms(y, ny, tol.rtol)) {
    const double r = std::max(tol.rtol, 64.0 * std::numeric_limits<double>::epsilon());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const HermitianMatrix mi = (x[i] + y[i]) * 0.5;
        const HermitianMatrix mj = (x[j] + y[j]) * 0.5;
        const double bound = r * (1.0 + 0.25 * (nx[i] + ny[i]) * (nx[j] + ny[j]));
        if (commutator_norm(mi, mj) > bound) {
          throw std::logic_error("compatible tuples with a non-abelian midpoint");
        }
      }
    }
  }
  return true;
}

}  // namespace opineq
