#include "opineq/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace opineq {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<double> draw_spectrum(Rng& rng, Eigen::Index dim, double lo, double hi) {
  std::vector<double> ev(static_cast<std::size_t>(dim));
  for (auto& v : ev) v = uniform(rng, lo, hi);
  return ev;
}

const Interval& bounded(const Interval& iv) {
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) throw DomainError("generators need a bounded cube");
  return iv;
}

HermitianMatrix embed_blocks(const std::vector<HermitianMatrix>& blocks, Eigen::Index dim) {
  Matrix m = Matrix::Zero(dim, dim);
  Eigen::Index offset = 0;
  for (const auto& b : blocks) {
    m.block(offset, offset, b.dim(), b.dim()) = b.matrix();
    offset += b.dim();
  }
  return HermitianMatrix(m);
}

}  // namespace

Rng instance_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Matrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  return g;
}

Matrix random_unitary(Rng& rng, Eigen::Index dim) {
  const Matrix z = random_gaussian(rng, dim, dim);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

HermitianMatrix random_hermitian(Rng& rng, Eigen::Index dim) {
  const Matrix g = random_gaussian(rng, dim, dim);
  return HermitianMatrix(Matrix(g + g.adjoint()));
}

Vector random_unit_vector(Rng& rng, Eigen::Index dim) {
  Vector v = random_gaussian(rng, dim, 1).col(0);
  while (v.norm() < 1e-8) v = random_gaussian(rng, dim, 1).col(0);
  return v / v.norm();
}

Matrix random_frame(Rng& rng, Eigen::Index dim, Eigen::Index k) {
  for (;;) {
    const Matrix g = random_gaussian(rng, dim, k);
    Eigen::JacobiSVD<Matrix> svd(g);
    const auto& sv = svd.singularValues();
    if (sv(k - 1) <= 0.0 || sv(0) / sv(k - 1) > 1e8) continue;
    Eigen::HouseholderQR<Matrix> qr(g);
    return qr.householderQ() * Matrix::Identity(dim, k);
  }
}

AbelianTuple abelian_in_basis(const Matrix& basis, const std::vector<std::vector<double>>& eigenvalues) {
  std::vector<HermitianMatrix> members;
  for (const auto& ev : eigenvalues) {
    Eigen::VectorXd d(static_cast<Eigen::Index>(ev.size()));
    for (std::size_t j = 0; j < ev.size(); ++j) d(static_cast<Eigen::Index>(j)) = ev[j];
    members.emplace_back(Matrix(basis * d.cast<Complex>().asDiagonal() * basis.adjoint()));
  }
  return AbelianTuple(std::move(members));
}

AbelianTuple gen_abelian_tuple(Eigen::Index dim, std::size_t n, const Cube& cube, Rng& rng) {
  if (dim < 1 || n < 1) throw DimensionError("gen_abelian_tuple: dim and n must be positive");
  if (cube.arity() != n) throw DimensionError("gen_abelian_tuple: cube arity mismatch");
  const Matrix u = random_unitary(rng, dim);
  std::vector<std::vector<double>> ev;
  for (std::size_t i = 0; i < n; ++i) ev.push_back(draw_spectrum(rng, dim, bounded(cube[i]).lo, cube[i].hi));
  return abelian_in_basis(u, ev);
}

AbelianTuple gen_abelian_tuple(Eigen::Index dim, std::size_t n, const Cube& cube, std::uint64_t seed) {
  Rng rng(seed);
  return gen_abelian_tuple(dim, n, cube, rng);
}

DominatedPair gen_dominated_pair(Eigen::Index dim, std::size_t n, const Cube& cube, Rng& rng, Domination mode,
                                 double shrink) {
  if (dim < 1 || n < 1) throw DimensionError("gen_dominated_pair: dim and n must be positive");
  const Matrix v = random_unitary(rng, dim);
  return gen_dominated_pair_in_basis(dim, n, cube, v, rng, mode, shrink);
}

DominatedPair gen_dominated_pair_in_basis(Eigen::Index dim, std::size_t n, const Cube& cube, const Matrix& v,
                                          Rng& rng, Domination mode, double shrink) {
  if (dim < 1 || n < 1) throw DimensionError("gen_dominated_pair: dim and n must be positive");
  if (v.rows() != dim || v.cols() != dim) throw DimensionError("gen_dominated_pair: basis has the wrong shape");
  if (cube.arity() != n) throw DimensionError("gen_dominated_pair: cube arity mismatch");
  if (!(shrink >= 0.0 && shrink <= 1.0)) throw DomainError("gen_dominated_pair: shrink must lie in [0, 1]");
  for (const auto& iv : cube.intervals()) {
    if (!(bounded(iv).hi > iv.lo)) throw DomainError("gen_dominated_pair: cube has no headroom");
  }

  const Matrix u = random_unitary(rng, dim);
  std::vector<std::vector<double>> xe, ye;

  if (mode == Domination::separated) {
    for (std::size_t i = 0; i < n; ++i) {
      const double l = cube[i].lo;
      const double w = cube[i].hi - l;
      ye.push_back(draw_spectrum(rng, dim, l + 0.4 * w, cube[i].hi));
      const double x_hi = l + 0.4 * w - shrink * 0.1 * w;
      xe.push_back(draw_spectrum(rng, dim, x_hi - shrink * 0.3 * w, x_hi));
    }
    AbelianTuple y = abelian_in_basis(v, ye);
    if (shrink == 0.0) return {y, y};
    return {abelian_in_basis(u, xe), std::move(y)};
  }

  for (std::size_t i = 0; i < n; ++i) {
    const double l = cube[i].lo;
    const double w = cube[i].hi - l;
    auto d = draw_spectrum(rng, dim, l, l + 0.5 * w);
    auto e = draw_spectrum(rng, dim, l, l + 0.5 * w);
    const AbelianTuple xi = abelian_in_basis(u, {d});
    const AbelianTuple yi = abelian_in_basis(v, {e});
    const double shift = std::max(0.0, -lambda_min(yi[0] - xi[0]));
    for (auto& val : e) val = std::min(val + shift, cube[i].hi);
    xe.push_back(std::move(d));
    ye.push_back(std::move(e));
  }
  return {abelian_in_basis(u, xe), abelian_in_basis(v, ye)};
}

CentralizerInstance gen_centralizer_pair(Eigen::Index dim, std::size_t n, const std::vector<Eigen::Index>& blocks,
                                         Rng& rng, Domination mode) {
  if (std::accumulate(blocks.begin(), blocks.end(), Eigen::Index{0}) != dim ||
      std::any_of(blocks.begin(), blocks.end(), [](Eigen::Index b) { return b < 1; })) {
    throw DimensionError("gen_centralizer_pair: blocks must partition the dimension");
  }
  const Cube cube = Cube::uniform(n, Interval{0.0, 2.0});
  std::vector<std::vector<HermitianMatrix>> xb(n), yb(n);
  std::vector<double> weights;
  for (const Eigen::Index b : blocks) {
    const DominatedPair pair = gen_dominated_pair(b, n, cube, rng, mode);
    for (std::size_t i = 0; i < n; ++i) {
      xb[i].push_back(pair.x[i]);
      yb[i].push_back(pair.y[i]);
    }
    const double level = uniform(rng, 0.2, 2.0);
    weights.insert(weights.end(), static_cast<std::size_t>(b), level);
  }
  std::vector<HermitianMatrix> xs, ys;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(embed_blocks(xb[i], dim));
    ys.push_back(embed_blocks(yb[i], dim));
  }
  return {AbelianTuple(std::move(xs)), AbelianTuple(std::move(ys)), DiagonalState(std::move(weights)), blocks};
}

std::vector<Eigen::Index> random_partition(Rng& rng, Eigen::Index dim) {
  std::vector<Eigen::Index> cuts;
  for (Eigen::Index k = 1; k < dim; ++k)
    if (uniform(rng, 0.0, 1.0) < 0.4) cuts.push_back(k);
  std::vector<Eigen::Index> blocks;
  Eigen::Index prev = 0;
  for (Eigen::Index c : cuts) {
    blocks.push_back(c - prev);
    prev = c;
  }
  blocks.push_back(dim - prev);
  return blocks;
}

DiagonalState random_state(Rng& rng, Eigen::Index dim, double zero_prob) {
  std::vector<double> w(static_cast<std::size_t>(dim));
  for (auto& v : w) v = uniform(rng, 0.1, 2.0);
  if (dim > 1 && uniform(rng, 0.0, 1.0) < zero_prob) w[uniform_index(rng, 0, w.size() - 1)] = 0.0;
  return DiagonalState(std::move(w));
}

ColumnField random_column_field(Rng& rng, Eigen::Index dim, std::size_t atoms) {
  for (;;) {
    std::vector<double> weights;
    std::vector<Matrix> bs;
    Matrix s = Matrix::Zero(dim, dim);
    for (std::size_t t = 0; t < atoms; ++t) {
      weights.push_back(uniform(rng, 0.2, 1.0));
      bs.push_back(random_gaussian(rng, dim, dim));
      s += weights.back() * bs.back().adjoint() * bs.back();
    }
    const auto ev = eigenvalues(HermitianMatrix(s));
    if (ev.back() <= 0.0 || ev.front() / ev.back() > 1e6) continue;
    return ColumnField::normalized(std::move(weights), std::move(bs));
  }
}

CompatiblePair gen_compatible_pair_rejection(Rng& rng, std::size_t n, int max_attempts, const Tolerance& tol) {
  auto draw = [&rng]() {
    Matrix m(2, 2);
    const double a = static_cast<double>(uniform_index(rng, 0, 2)) - 1.0;
    const double b = static_cast<double>(uniform_index(rng, 0, 2)) - 1.0;
    const double c = static_cast<double>(uniform_index(rng, 0, 2)) - 1.0;
    m << a, b, b, c;
    return HermitianMatrix(m);
  };
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    std::vector<HermitianMatrix> x, y;
    for (std::size_t i = 0; i < n; ++i) x.push_back(draw());
    for (std::size_t i = 0; i < n; ++i) y.push_back(draw());
    if (!check_commuting(x, tol) || !check_commuting(y, tol) || !check_compatible(x, y, tol)) continue;
    bool cross = false;
    for (std::size_t i = 0; i < n && !cross; ++i)
      for (std::size_t j = 0; j < n && !cross; ++j) cross = commutator_norm(x[i], y[j]) > 0.5;
    if (!cross) continue;
    return {AbelianTuple(std::move(x), tol), AbelianTuple(std::move(y), tol), attempt};
  }
  throw GenerationError("no compatible non-commuting pair found in " + std::to_string(max_attempts) + " attempts");
}

}  // namespace opineq
