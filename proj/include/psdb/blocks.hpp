#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psdb/means.hpp"
#include "psdb/numerics.hpp"

namespace psdb {

/// A validated PSD matrix [m11 m12; m12* m22] with square n x n blocks.
class BlockPsdMatrix {
 public:
  /// Validates dimensions, Hermitian diagonal blocks and positivity of the
  /// assembled matrix. Throws ValidationError carrying lambda_min if the
  /// assembled matrix is not PSD.
  static BlockPsdMatrix make(const ComplexMatrix& m11, const ComplexMatrix& m12,
                             const ComplexMatrix& m22, const ToleranceConfig& tol = {});

  Eigen::Index n() const noexcept { return m12_.rows(); }
  const HermitianMatrix& m11() const noexcept { return m11_; }
  const ComplexMatrix& m12() const noexcept { return m12_; }
  const HermitianMatrix& m22() const noexcept { return m22_; }
  /// Smallest eigenvalue of the assembled matrix, recorded at validation.
  double lambda_min() const noexcept { return lambda_min_; }

  HermitianMatrix assembled() const;

 private:
  BlockPsdMatrix(HermitianMatrix m11, ComplexMatrix m12, HermitianMatrix m22, double lambda_min)
      : m11_(std::move(m11)), m12_(std::move(m12)), m22_(std::move(m22)), lambda_min_(lambda_min) {}

  HermitianMatrix m11_;
  ComplexMatrix m12_;
  HermitianMatrix m22_;
  double lambda_min_ = 0.0;
};

inline BlockPsdMatrix make_block(const ComplexMatrix& m11, const ComplexMatrix& m12,
                                 const ComplexMatrix& m22, const ToleranceConfig& tol = {}) {
  return BlockPsdMatrix::make(m11, m12, m22, tol);
}

inline constexpr double kDefaultContractionSlack = 1e-3;

/// [m11, m11^1/2 x m22^1/2; ., m22]. If 1 < s1(x) <= 1 + contraction_slack,
/// x is first rescaled by 1 / s1(x); larger s1(x) throws InputError.
BlockPsdMatrix from_contraction(const HermitianMatrix& m11, const HermitianMatrix& m22,
                                const ComplexMatrix& x, const ToleranceConfig& tol = {},
                                double contraction_slack = kDefaultContractionSlack);

/// [m11 m12*; m12 m22]. Hermitian, not necessarily PSD.
HermitianMatrix partial_transpose(const BlockPsdMatrix& m);

bool is_ppt(const BlockPsdMatrix& m, const ToleranceConfig& tol = {});

// ---------------------------------------------------------------------------
// Spectral properties.
//
//   la : prod_{j<=k} 2 s_j(m12) <= prod_{j<=k} lambda_j(m11 + m22)
//   lg : prod_{j<=k}   s_j(m12) <= prod_{j<=k} lambda_j(m11 # m22)
//   a  :             2 s_j(m12) <= lambda_j(m11 + m22)
//   g  :               s_j(m12) <= lambda_j(m11 # m22)
//   ma : sum_{j<=k}  2 s_j(m12) <= sum_{j<=k} lambda_j(m11 + m22)
//   mg : sum_{j<=k}    s_j(m12) <= sum_{j<=k} lambda_j(m11 # m22)

enum class Property { la, lg, a, g, ma, mg };

inline constexpr std::array<Property, 6> kAllProperties = {
    Property::la, Property::lg, Property::a, Property::g, Property::ma, Property::mg};
/// The four properties of the Venn picture.
inline constexpr std::array<Property, 4> kVennProperties = {Property::la, Property::lg,
                                                            Property::a, Property::g};

std::string_view to_string(Property p);
/// Throws InputError for unknown names.
Property parse_property(std::string_view name);

struct PropertyVerdict {
  bool holds = true;
  /// rhs_k - lhs_k per index (length n).
  std::vector<double> margins;
  /// Comparison slack per index; holds iff margins[k] >= -slack[k] for all k.
  std::vector<double> slack;
  /// min_k margins[k] / slack[k]; below -1 means violated.
  double worst_ratio = 0.0;
  /// Index (0-based) attaining worst_ratio.
  std::size_t worst_index = 0;

  double min_margin() const;
  /// First 0-based index whose margin is below -slack.
  std::optional<std::size_t> first_violation() const;
  /// Some |margin| within `factor` times its slack.
  bool marginal(double factor = 10.0) const;
};

struct PropertyProfile {
  std::array<PropertyVerdict, 6> verdicts;
  Spectrum offdiag_singular_values;  // s(m12)
  Spectrum sum_eigenvalues;          // lambda(m11 + m22)
  Spectrum mean_eigenvalues;         // lambda(m11 # m22)
  GeometricMeanResult geometric_mean;
  ToleranceConfig tol;

  const PropertyVerdict& operator[](Property p) const {
    return verdicts[static_cast<std::size_t>(p)];
  }
  bool holds(Property p) const { return (*this)[p].holds; }
  /// Sorted "+"-joined names of the Venn properties that hold, "none" if none.
  std::string region() const;
};

/// Evaluates all six properties from shared spectra. Product families are
/// compared in the log domain when every factor exceeds 1e-300.
PropertyProfile property_profile(const BlockPsdMatrix& m, const ToleranceConfig& tol = {});

/// Checks g => {a, lg, mg}, a => {la, ma}, lg => {la, mg}, la => ma,
/// mg => ma. An implication whose conclusion fails only within 10x slack is
/// not counted as inconsistent.
bool lattice_consistent(const PropertyProfile& profile);

enum class Branch { a, lg, both };
std::string_view to_string(Branch b);

/// For n = 2 instances with the la property: returns which of a / lg hold.
/// Throws InputError if n != 2 or la fails; throws Error if neither holds.
Branch two_by_two_la_branch(const BlockPsdMatrix& m, const ToleranceConfig& tol = {});

}  // namespace psdb
