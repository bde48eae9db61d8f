#include "psdb/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace psdb {

BlockPsdMatrix BlockPsdMatrix::make(const ComplexMatrix& m11, const ComplexMatrix& m12,
                                    const ComplexMatrix& m22, const ToleranceConfig& tol) {
  const Eigen::Index n = m12.rows();
  if (n == 0 || m12.cols() != n) {
    throw DimensionError("off-diagonal block must be square and nonempty, got " +
                         std::to_string(m12.rows()) + "x" + std::to_string(m12.cols()));
  }
  if (m11.rows() != n || m11.cols() != n || m22.rows() != n || m22.cols() != n) {
    throw DimensionError("diagonal blocks must be " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
  require_finite(m12, "m12");
  HermitianMatrix h11(m11, tol);
  HermitianMatrix h22(m22, tol);
  const HermitianMatrix full(assemble_blocks(h11.matrix(), m12, h22.matrix()), tol);
  const PsdCheck check = is_psd(full, tol);
  if (!check) {
    std::ostringstream os;
    os << "block matrix is not positive semidefinite: lambda_min = " << check.lambda_min;
    throw ValidationError(os.str(), check.lambda_min);
  }
  return BlockPsdMatrix(std::move(h11), m12, std::move(h22), check.lambda_min);
}

HermitianMatrix BlockPsdMatrix::assembled() const {
  return HermitianMatrix::hermitian_part(assemble_blocks(m11_.matrix(), m12_, m22_.matrix()));
}

BlockPsdMatrix from_contraction(const HermitianMatrix& m11, const HermitianMatrix& m22,
                                const ComplexMatrix& x, const ToleranceConfig& tol,
                                double contraction_slack) {
  if (m11.dim() != m22.dim() || x.rows() != m11.dim() || x.cols() != m11.dim()) {
    throw DimensionError("from_contraction: m11, m22 and x must have equal square dimensions");
  }
  require_finite(x, "contraction");
  const double s1 = spectral_norm(x);
  if (s1 > 1.0 + contraction_slack) {
    std::ostringstream os;
    os << "from_contraction: x is not a contraction (s1 = " << s1 << ")";
    throw InputError(os.str());
  }
  const ComplexMatrix xc = s1 > 1.0 ? ComplexMatrix(x / s1) : x;
  const ComplexMatrix m12 = sqrt_psd(m11, tol).matrix() * xc * sqrt_psd(m22, tol).matrix();
  return BlockPsdMatrix::make(m11.matrix(), m12, m22.matrix(), tol);
}

HermitianMatrix partial_transpose(const BlockPsdMatrix& m) {
  return HermitianMatrix::hermitian_part(
      assemble_blocks(m.m11().matrix(), m.m12().adjoint(), m.m22().matrix()));
}

bool is_ppt(const BlockPsdMatrix& m, const ToleranceConfig& tol) {
  return is_psd(partial_transpose(m), tol).psd;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Property p) {
  switch (p) {
    case Property::la: return "la";
    case Property::lg: return "lg";
    case Property::a: return "a";
    case Property::g: return "g";
    case Property::ma: return "ma";
    case Property::mg: return "mg";
  }
  return "?";
}

Property parse_property(std::string_view name) {
  for (Property p : kAllProperties) {
    if (to_string(p) == name) return p;
  }
  throw InputError("unknown property '" + std::string(name) + "' (expected la, lg, a, g, ma, mg)");
}

double PropertyVerdict::min_margin() const {
  return margins.empty() ? 0.0 : *std::min_element(margins.begin(), margins.end());
}

std::optional<std::size_t> PropertyVerdict::first_violation() const {
  for (std::size_t k = 0; k < margins.size(); ++k) {
    if (margins[k] < -slack[k]) return k;
  }
  return std::nullopt;
}

bool PropertyVerdict::marginal(double factor) const {
  for (std::size_t k = 0; k < margins.size(); ++k) {
    if (std::abs(margins[k]) <= factor * slack[k]) return true;
  }
  return false;
}

std::string PropertyProfile::region() const {
  std::vector<std::string> names;
  for (Property p : kVennProperties) {
    if (holds(p)) names.emplace_back(to_string(p));
  }
  if (names.empty()) return "none";
  std::sort(names.begin(), names.end());
  std::string out = names.front();
  for (std::size_t i = 1; i < names.size(); ++i) out += "+" + names[i];
  return out;
}

namespace {

constexpr double kLogDomainFloor = 1e-300;

void finish(PropertyVerdict& v, const std::vector<bool>& index_holds) {
  v.holds = std::all_of(index_holds.begin(), index_holds.end(), [](bool b) { return b; });
  v.worst_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < v.margins.size(); ++k) {
    const double ratio = v.margins[k] / v.slack[k];
    if (ratio < v.worst_ratio) {
      v.worst_ratio = ratio;
      v.worst_index = k;
    }
  }
}

// Termwise lhs_j <= rhs_j.
PropertyVerdict termwise(const std::vector<double>& lhs, const std::vector<double>& rhs,
                         const ToleranceConfig& tol) {
  PropertyVerdict v;
  std::vector<bool> ok;
  for (std::size_t j = 0; j < lhs.size(); ++j) {
    v.margins.push_back(rhs[j] - lhs[j]);
    v.slack.push_back(tol.slack(rhs[j]));
    ok.push_back(v.margins.back() >= -v.slack.back());
  }
  finish(v, ok);
  return v;
}

// Partial sums sum_{j<=k} lhs_j <= sum_{j<=k} rhs_j.
PropertyVerdict partial_sums(const std::vector<double>& lhs, const std::vector<double>& rhs,
                             const ToleranceConfig& tol) {
  std::vector<double> l(lhs.size());
  std::vector<double> r(rhs.size());
  double sl = 0.0;
  double sr = 0.0;
  for (std::size_t j = 0; j < lhs.size(); ++j) {
    l[j] = (sl += lhs[j]);
    r[j] = (sr += rhs[j]);
  }
  return termwise(l, r, tol);
}

// Partial products prod_{j<=k} lhs_j <= prod_{j<=k} rhs_j.
PropertyVerdict partial_products(const std::vector<double>& lhs, const std::vector<double>& rhs,
                                 const ToleranceConfig& tol) {
  PropertyVerdict v;
  std::vector<bool> ok;
  double pl = 1.0;
  double pr = 1.0;
  double log_l = 0.0;
  double log_r = 0.0;
  bool log_domain = true;
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    pl *= lhs[k];
    pr *= rhs[k];
    log_domain = log_domain && lhs[k] > kLogDomainFloor && rhs[k] > kLogDomainFloor;
    if (log_domain) {
      log_l += std::log(lhs[k]);
      log_r += std::log(rhs[k]);
    }
    const double slack = tol.slack(pr);
    v.margins.push_back(pr - pl);
    v.slack.push_back(slack);
    if (log_domain) {
      // lhs <= rhs + slack  <=>  log lhs <= log rhs + log1p(slack / rhs).
      const double rel = slack * std::exp(-log_r);
      ok.push_back(log_l <= log_r + std::log1p(rel));
    } else {
      ok.push_back(pr - pl >= -slack);
    }
  }
  finish(v, ok);
  return v;
}

}  // namespace

PropertyProfile property_profile(const BlockPsdMatrix& m, const ToleranceConfig& tol) {
  PropertyProfile out;
  out.tol = tol;
  out.offdiag_singular_values = singular_values(m.m12());
  out.sum_eigenvalues = eigenvalues(m.m11() + m.m22());
  out.geometric_mean = geometric_mean_psd(m.m11(), m.m22(), tol);
  out.mean_eigenvalues = eigenvalues(out.geometric_mean.value);

  const std::vector<double>& s = out.offdiag_singular_values.values();
  std::vector<double> two_s(s.size());
  std::transform(s.begin(), s.end(), two_s.begin(), [](double x) { return 2.0 * x; });
  const std::vector<double>& sum = out.sum_eigenvalues.values();
  const std::vector<double>& gm = out.mean_eigenvalues.values();

  auto at = [&out](Property p) -> PropertyVerdict& {
    return out.verdicts[static_cast<std::size_t>(p)];
  };
  at(Property::la) = partial_products(two_s, sum, tol);
  at(Property::lg) = partial_products(s, gm, tol);
  at(Property::a) = termwise(two_s, sum, tol);
  at(Property::g) = termwise(s, gm, tol);
  at(Property::ma) = partial_sums(two_s, sum, tol);
  at(Property::mg) = partial_sums(s, gm, tol);
  return out;
}

bool lattice_consistent(const PropertyProfile& profile) {
  static constexpr std::pair<Property, Property> kImplications[] = {
      {Property::g, Property::a},   {Property::g, Property::lg}, {Property::g, Property::mg},
      {Property::a, Property::la},  {Property::a, Property::ma}, {Property::lg, Property::la},
      {Property::lg, Property::mg}, {Property::la, Property::ma}, {Property::mg, Property::ma},
  };
  for (const auto& [premise, conclusion] : kImplications) {
    if (profile.holds(premise) && !profile.holds(conclusion) &&
        profile[conclusion].worst_ratio < -10.0) {
      return false;
    }
  }
  return true;
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::a: return "a";
    case Branch::lg: return "lg";
    case Branch::both: return "both";
  }
  return "?";
}

Branch two_by_two_la_branch(const BlockPsdMatrix& m, const ToleranceConfig& tol) {
  if (m.n() != 2) throw InputError("two_by_two_la_branch: blocks must be 2x2");
  const PropertyProfile p = property_profile(m, tol);
  if (!p.holds(Property::la)) throw InputError("two_by_two_la_branch: la property does not hold");
  const bool a = p.holds(Property::a);
  const bool lg = p.holds(Property::lg);
  if (a && lg) return Branch::both;
  if (a) return Branch::a;
  if (lg) return Branch::lg;
  throw Error("two_by_two_la_branch: la holds but neither a nor lg does");
}

}  // namespace psdb
