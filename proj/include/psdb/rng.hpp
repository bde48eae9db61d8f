#pragma once

// Deterministic random matrices.
//
// The generator is SplitMix64 (Steele, Lea & Flood 2014): state advances by
// the golden-ratio increment 0x9E3779B97F4A7C15 and each output is the
// finalizer mix64(state). Trial t of a run with master seed S draws from its
// own stream seeded with stream_seed(S, t), so any trial can be regenerated
// in isolation and parallel runs match serial ones. Uniforms take the top 53
// bits; normals come from the Box-Muller transform. Nothing here depends on
// implementation-defined standard-library distributions.

#include <cstdint>

#include "psdb/numerics.hpp"

namespace psdb {

std::uint64_t mix64(std::uint64_t z) noexcept;

/// Seed of trial `index` under master seed `master`.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept;
  /// Uniform on (0, 1).
  double uniform() noexcept;
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept;
  /// Standard normal.
  double normal() noexcept;
  /// Complex normal with E|z|^2 = 1 (independent N(0, 1/2) parts), or a real
  /// N(0, 1) when `real` is set.
  Complex complex_normal(bool real = false) noexcept;

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// rows x cols matrix of independent complex_normal entries.
ComplexMatrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, bool real = false);

/// G G* with G n x rank Gaussian.
ComplexMatrix ginibre_psd(Rng& rng, Eigen::Index n, Eigen::Index rank, bool real = false);

/// Haar-distributed unitary (orthogonal when `real`): Q from the QR
/// factorization of a Gaussian matrix, with columns rescaled so that R has a
/// positive diagonal.
ComplexMatrix haar_unitary(Rng& rng, Eigen::Index n, bool real = false);

/// Gaussian matrix rescaled to spectral norm `norm`.
ComplexMatrix contraction(Rng& rng, Eigen::Index rows, Eigen::Index cols, double norm,
                          bool real = false);

/// (G + G*) / 2 with G Gaussian.
ComplexMatrix random_hermitian(Rng& rng, Eigen::Index n, bool real = false);

}  // namespace psdb
