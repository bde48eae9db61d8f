#include "psdb/rng.hpp"

#include <cmath>
#include <numbers>

namespace psdb {

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(master ^ mix64(index + 0x9E3779B97F4A7C15ULL));
}

std::uint64_t Rng::next_u64() noexcept {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix64(state_);
}

double Rng::uniform() noexcept {
  // (k + 0.5) / 2^53 never hits 0 or 1.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) noexcept {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next_u64() % span);
}

double Rng::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_normal(bool real) noexcept {
  if (real) return {normal(), 0.0};
  const double re = normal() * std::numbers::sqrt2 / 2.0;
  const double im = normal() * std::numbers::sqrt2 / 2.0;
  return {re, im};
}

ComplexMatrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, bool real) {
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = rng.complex_normal(real);
  }
  return g;
}

ComplexMatrix ginibre_psd(Rng& rng, Eigen::Index n, Eigen::Index rank, bool real) {
  const ComplexMatrix g = gaussian_matrix(rng, n, rank, real);
  return HermitianMatrix::hermitian_part(g * g.adjoint()).matrix();
}

ComplexMatrix haar_unitary(Rng& rng, Eigen::Index n, bool real) {
  const ComplexMatrix g = gaussian_matrix(rng, n, n, real);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mod = std::abs(d);
    if (mod > 0.0) q.col(j) *= d / mod;
  }
  return q;
}

ComplexMatrix contraction(Rng& rng, Eigen::Index rows, Eigen::Index cols, double norm, bool real) {
  const ComplexMatrix g = gaussian_matrix(rng, rows, cols, real);
  return g * (norm / spectral_norm(g));
}

ComplexMatrix random_hermitian(Rng& rng, Eigen::Index n, bool real) {
  const ComplexMatrix g = gaussian_matrix(rng, n, n, real);
  return (g + g.adjoint()) * 0.5;
}

}  // namespace psdb
