#pragma once

#include <vector>

#include "psdb/blocks.hpp"
#include "psdb/numerics.hpp"

namespace psdb {

/// Largest n accepted by compound().
inline constexpr Eigen::Index kMaxCompoundDim = 12;

/// k-subsets of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<Eigen::Index>> k_subsets(Eigen::Index n, Eigen::Index k);

/// k-th compound (antisymmetric tensor power): the C(n,k) x C(n,k) matrix of
/// k x k minors, rows/columns indexed by lexicographically ordered k-subsets.
/// Requires square x with n <= kMaxCompoundDim and 1 <= k <= n.
ComplexMatrix compound(const ComplexMatrix& x, Eigen::Index k);

/// ||C_k(xy) - C_k(x) C_k(y)|| / max(1, ||C_k(xy)||).
double compound_multiplicativity_check(const ComplexMatrix& x, const ComplexMatrix& y,
                                       Eigen::Index k);

/// ||C_k(a # b) - C_k(a) # C_k(b)|| / max(1, ||C_k(a # b)||) for PD a, b.
double compound_gm_commutation_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                     Eigen::Index k, const ToleranceConfig& tol = {});

/// |s1(C_k(x)) - prod_{j<=k} s_j(x)| / max(1, prod_{j<=k} s_j(x)).
double top_singular_product_check(const ComplexMatrix& x, Eigen::Index k);

/// Assembles [C_k(m11) C_k(m12); C_k(m12*) C_k(m22)] and reports whether it is
/// PSD with a PSD partial transpose.
bool compound_block_ppt_check(const BlockPsdMatrix& m, Eigen::Index k,
                              const ToleranceConfig& tol = {});

}  // namespace psdb
