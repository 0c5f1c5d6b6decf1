#pragma once

// Seeded random instance generators.  Every generator draws only from the
// Rng it is handed, so a campaign that derives one Rng per instance index
// reproduces its instance stream exactly.

#include <cstdint>
#include <random>
#include <vector>

#include "opineq/abelian.hpp"
#include "opineq/pinching.hpp"
#include "opineq/state.hpp"

namespace opineq {

using Rng = std::mt19937_64;

// Independent stream for (seed, index), via splitmix64 mixing.
Rng instance_rng(std::uint64_t seed, std::uint64_t index);

double uniform(Rng& rng, double lo, double hi);
double normal(Rng& rng);
std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);  // inclusive

Matrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols);
// Haar-distributed unitary (QR of a complex Gaussian with phase correction).
Matrix random_unitary(Rng& rng, Eigen::Index dim);
HermitianMatrix random_hermitian(Rng& rng, Eigen::Index dim);
Vector random_unit_vector(Rng& rng, Eigen::Index dim);
// Orthonormalized m x k Gaussian; draws with condition number above 1e8 are
// rejected and redrawn.
Matrix random_frame(Rng& rng, Eigen::Index dim, Eigen::Index k);

// members[i] = basis diag(eigenvalues[i]) basis^*
AbelianTuple abelian_in_basis(const Matrix& basis, const std::vector<std::vector<double>>& eigenvalues);

/// Common random eigenbasis, eigenvalues uniform on each side of the cube.
AbelianTuple gen_abelian_tuple(Eigen::Index dim, std::size_t n, const Cube& cube, Rng& rng);
AbelianTuple gen_abelian_tuple(Eigen::Index dim, std::size_t n, const Cube& cube, std::uint64_t seed);

enum class Domination {
  // y in basis V with spectrum in [l + 0.4w, u], x in an independent basis U
  // with spectrum in [l, l + 0.3w]: lambda_max(x_i) <= lambda_min(y_i).
  separated,
  // Overlapping spectra: x and y drawn in [l, l + w/2], then each y_i is
  // lifted by the smallest shift making y_i - x_i PSD, so the order is tight.
  touching,
};

struct DominatedPair {
  AbelianTuple x;
  AbelianTuple y;
};

/// x <= y memberwise with x and y abelian in independent random bases.
/// `shrink` in [0, 1] scales how far below y the separated x sits;
/// shrink = 0 returns x = y.
DominatedPair gen_dominated_pair(Eigen::Index dim, std::size_t n, const Cube& cube, Rng& rng,
                                 Domination mode = Domination::separated, double shrink = 1.0);

// Same construction with y abelian in the given basis.
DominatedPair gen_dominated_pair_in_basis(Eigen::Index dim, std::size_t n, const Cube& cube, const Matrix& y_basis,
                                          Rng& rng, Domination mode = Domination::separated, double shrink = 1.0);

struct CentralizerInstance {
  AbelianTuple x;
  AbelianTuple y;
  DiagonalState rho;
  std::vector<Eigen::Index> blocks;
};

/// rho constant on each block of `blocks` (random positive level per block),
/// x and y block diagonal with a dominated pair in every block, so every
/// member commutes with diag(rho) exactly.
CentralizerInstance gen_centralizer_pair(Eigen::Index dim, std::size_t n, const std::vector<Eigen::Index>& blocks,
                                         Rng& rng, Domination mode = Domination::separated);

std::vector<Eigen::Index> random_partition(Rng& rng, Eigen::Index dim);

// Positive weights, with probability `zero_prob` one index set to zero.
DiagonalState random_state(Rng& rng, Eigen::Index dim, double zero_prob = 0.0);

// General unital field: random Gaussian b_t and weights, normalized.
ColumnField random_column_field(Rng& rng, Eigen::Index dim, std::size_t atoms);

struct CompatiblePair {
  AbelianTuple x;
  AbelianTuple y;
  int attempts = 0;
};

/// Rejection sampler for compatible, abelian pairs of 2x2 real symmetric
/// matrices with entries in {-1, 0, 1} that do not all commute with each
/// other.  Throws GenerationError after max_attempts draws.
CompatiblePair gen_compatible_pair_rejection(Rng& rng, std::size_t n = 2, int max_attempts = 10000,
                                             const Tolerance& tol = {});

}  // namespace opineq
