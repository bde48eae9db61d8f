#include "psdb/compound.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "psdb/means.hpp"

namespace psdb {

std::vector<std::vector<Eigen::Index>> k_subsets(Eigen::Index n, Eigen::Index k) {
  std::vector<std::vector<Eigen::Index>> out;
  if (k < 0 || k > n) return out;
  std::vector<Eigen::Index> current(static_cast<std::size_t>(k));
  std::iota(current.begin(), current.end(), Eigen::Index{0});
  while (true) {
    out.push_back(current);
    // Advance the rightmost position that still has room.
    Eigen::Index i = k - 1;
    while (i >= 0 && current[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++current[static_cast<std::size_t>(i)];
    for (Eigen::Index j = i + 1; j < k; ++j) {
      current[static_cast<std::size_t>(j)] = current[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

ComplexMatrix compound(const ComplexMatrix& x, Eigen::Index k) {
  if (x.rows() != x.cols()) throw DimensionError("compound: matrix must be square");
  const Eigen::Index n = x.rows();
  if (n > kMaxCompoundDim) {
    throw InputError("compound: dimension " + std::to_string(n) + " exceeds cap " +
                     std::to_string(kMaxCompoundDim));
  }
  if (k < 1 || k > n) {
    throw InputError("compound: k = " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  const auto subsets = k_subsets(n, k);
  const auto size = static_cast<Eigen::Index>(subsets.size());
  ComplexMatrix out(size, size);
  ComplexMatrix minor(k, k);
  for (Eigen::Index r = 0; r < size; ++r) {
    const auto& rows = subsets[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < size; ++c) {
      const auto& cols = subsets[static_cast<std::size_t>(c)];
      for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
          minor(i, j) = x(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
        }
      }
      out(r, c) = minor.partialPivLu().determinant();
    }
  }
  return out;
}

double compound_multiplicativity_check(const ComplexMatrix& x, const ComplexMatrix& y,
                                       Eigen::Index k) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw DimensionError("compound_multiplicativity_check: dimension mismatch");
  }
  const ComplexMatrix lhs = compound(x * y, k);
  const ComplexMatrix rhs = compound(x, k) * compound(y, k);
  return spectral_norm(lhs - rhs) / std::max(1.0, spectral_norm(lhs));
}

double compound_gm_commutation_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                     Eigen::Index k, const ToleranceConfig& tol) {
  const HermitianMatrix mean = geometric_mean_psd(a, b, tol).value;
  const ComplexMatrix lhs = compound(mean.matrix(), k);
  const HermitianMatrix ca = HermitianMatrix::hermitian_part(compound(a.matrix(), k));
  const HermitianMatrix cb = HermitianMatrix::hermitian_part(compound(b.matrix(), k));
  const ComplexMatrix rhs = geometric_mean_psd(ca, cb, tol).value.matrix();
  return spectral_norm(lhs - rhs) / std::max(1.0, spectral_norm(lhs));
}

double top_singular_product_check(const ComplexMatrix& x, Eigen::Index k) {
  const ComplexMatrix ck = compound(x, k);
  const Spectrum s = singular_values(x);
  double product = 1.0;
  for (Eigen::Index j = 0; j < k; ++j) product *= s[static_cast<std::size_t>(j)];
  return std::abs(spectral_norm(ck) - product) / std::max(1.0, product);
}

bool compound_block_ppt_check(const BlockPsdMatrix& m, Eigen::Index k,
                              const ToleranceConfig& tol) {
  const ComplexMatrix c11 = compound(m.m11().matrix(), k);
  const ComplexMatrix c12 = compound(m.m12(), k);
  const ComplexMatrix c22 = compound(m.m22().matrix(), k);
  // C_k(m12*) = C_k(m12)*, so the assembled matrix is Hermitian.
  const HermitianMatrix full = HermitianMatrix::hermitian_part(assemble_blocks(c11, c12, c22));
  const HermitianMatrix transposed =
      HermitianMatrix::hermitian_part(assemble_blocks(c11, c12.adjoint(), c22));
  return is_psd(full, tol).psd && is_psd(transposed, tol).psd;
}

}  // namespace psdb
