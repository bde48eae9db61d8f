#pragma once

// Named constructors for the block families used throughout the test and
// experiment harnesses. Each returns a validated BlockPsdMatrix together with
// what is known about it, so harnesses can assert guaranteed properties and
// only report statistics for conjectured ones.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "psdb/blocks.hpp"

namespace psdb {

enum class Expectation {
  guaranteed,       // holds on every instance
  fails_sometimes,  // known to fail for some inputs
  conjectured,      // supported numerically, unproved
};

std::string_view to_string(Expectation e);

struct FamilyTags {
  bool ppt = false;  // PPT on every instance
  std::map<Property, Expectation> properties;

  /// Properties tagged `guaranteed`.
  std::vector<Property> guaranteed() const;
};

struct FamilyInstance {
  std::string family;
  BlockPsdMatrix block;
  FamilyTags tags;
  /// Largest condition number among the matrices inverted during
  /// construction (1 when nothing was inverted).
  double condition = 1.0;
};

inline constexpr double kDefaultHuaMargin = 1e-3;

/// Blocks (I - a*a)^-1, (I - b*a)^-1, (I - a*b)^-1, (I - b*b)^-1 for m x n
/// strict contractions a, b (s1 <= 1 - hua_margin).
FamilyInstance hua(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceConfig& tol = {},
                   double hua_margin = kDefaultHuaMargin);

/// Blocks phi(a), phi(x), phi(b) with phi(X) = X + tr(X) I, for a PSD parent
/// [a x; x* b].
FamilyInstance phi_block(const ComplexMatrix& a, const ComplexMatrix& x, const ComplexMatrix& b,
                         const ToleranceConfig& tol = {});

/// Blocks psi(a), psi(x), psi(b) with psi(X) = 2 tr(X) I - X, for a PSD
/// parent [a x; x* b].
FamilyInstance psi_block(const ComplexMatrix& a, const ComplexMatrix& x, const ComplexMatrix& b,
                         const ToleranceConfig& tol = {});

/// Blocks a^2 + b^2, ab + ba, a^2 + b^2 for Hermitian a, b.
FamilyInstance sym_square(const ComplexMatrix& a, const ComplexMatrix& b,
                          const ToleranceConfig& tol = {});

/// Blocks a + b, a - b, a + b for PSD a, b.
FamilyInstance sum_diff(const ComplexMatrix& a, const ComplexMatrix& b,
                        const ToleranceConfig& tol = {});

/// Blocks m11, u, u* m11^-1 u for PD m11 and unitary u (to 1e-8).
FamilyInstance unitary_offdiag(const ComplexMatrix& m11, const ComplexMatrix& u,
                               const ToleranceConfig& tol = {});

/// Blocks ||b|| a, ab, ||a|| b for nonzero PSD a, b.
FamilyInstance norm_weighted(const ComplexMatrix& a, const ComplexMatrix& b,
                             const ToleranceConfig& tol = {});

/// Blocks I, a, a*a for any square a.
FamilyInstance gram(const ComplexMatrix& a, const ToleranceConfig& tol = {});

/// Blocks a^2, ab, b^2 for PSD a, b.
FamilyInstance bhatia_kittaneh(const ComplexMatrix& a, const ComplexMatrix& b,
                               const ToleranceConfig& tol = {});

/// Static tags of a family by canonical name; throws InputError if unknown.
FamilyTags family_tags(std::string_view family);

/// Canonical family names.
const std::vector<std::string>& family_names();

/// Maps aliases ("phi", "unitary-offdiag", ...) to canonical names; throws
/// InputError listing the known families otherwise.
std::string canonical_family(std::string_view name);

}  // namespace psdb
