#pragma once

// Fixed instances with published numerical values, and the recomputation of
// those values.

#include <string>
#include <vector>

#include "psdb/blocks.hpp"
#include "psdb/families.hpp"

namespace psdb {

/// 4 x 4 rank-one matrix [[1,0,0,1],[0,0,0,0],[0,0,0,0],[1,0,0,1]] split into
/// 2 x 2 blocks; 2 s1(m12) = 2 > lambda1(m11 + m22) = 1.
BlockPsdMatrix rank_one_la_failure();

/// 3 x 3 instance from squares of two printed PD matrices and a printed
/// near-unitary x (rescaled to a contraction); la holds, lg and a fail.
BlockPsdMatrix la_only_instance();

/// 2 x 2 instance m11 = diag(1, 4), m22 = [[2,-1],[-1,1]]^2 with a Hadamard
/// x; lg and a hold, g fails.
BlockPsdMatrix lg_a_without_g_instance();

/// unitary_offdiag with m11 = diag(1, 2) and the swap matrix; a fails.
FamilyInstance unitary_swap_instance();

/// The two 2 x 2 PD matrices behind the norm-weighted lg failure.
ComplexMatrix norm_weighted_a();
ComplexMatrix norm_weighted_b();
/// norm_weighted(norm_weighted_a(), norm_weighted_b()); lg fails at k = 1.
FamilyInstance norm_weighted_instance();

/// gram([[1, 2], [0, 1]]): every property holds, g with equality.
FamilyInstance gram_instance();

struct FixtureCheck {
  std::string label;
  double expected = 0.0;
  double actual = 0.0;
  /// Absolute tolerance; 0 demands exact equality.
  double tol = 0.0;
  bool pass = false;
};

struct FixtureGroup {
  std::string name;
  std::vector<FixtureCheck> checks;
  bool pass() const;
};

/// Recomputes every published number of the five fixtures.
std::vector<FixtureGroup> verify_fixtures(const ToleranceConfig& tol = {});

}  // namespace psdb
