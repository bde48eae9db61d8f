#include "psdb/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace psdb {

std::string_view to_string(Expectation e) {
  switch (e) {
    case Expectation::guaranteed: return "guaranteed";
    case Expectation::fails_sometimes: return "fails_sometimes";
    case Expectation::conjectured: return "conjectured";
  }
  return "?";
}

std::vector<Property> FamilyTags::guaranteed() const {
  std::vector<Property> out;
  for (const auto& [p, e] : properties) {
    if (e == Expectation::guaranteed) out.push_back(p);
  }
  return out;
}

namespace {

using enum Expectation;

FamilyTags all_guaranteed(bool ppt) {
  FamilyTags t;
  t.ppt = ppt;
  for (Property p : kAllProperties) t.properties[p] = guaranteed;
  return t;
}

// PPT families: lg and everything it implies.
FamilyTags ppt_tags(Expectation a, Expectation g) {
  FamilyTags t;
  t.ppt = true;
  t.properties = {{Property::la, guaranteed}, {Property::lg, guaranteed},
                  {Property::ma, guaranteed}, {Property::mg, guaranteed},
                  {Property::a, a},           {Property::g, g}};
  return t;
}

const std::map<std::string, FamilyTags>& tag_table() {
  static const std::map<std::string, FamilyTags> table = [] {
    std::map<std::string, FamilyTags> t;
    t["hua"] = all_guaranteed(true);
    t["phi_block"] = ppt_tags(guaranteed, conjectured);
    t["psi_block"] = ppt_tags(conjectured, conjectured);
    t["sym_square"] = ppt_tags(fails_sometimes, fails_sometimes);
    t["sum_diff"] = ppt_tags(fails_sometimes, fails_sometimes);

    FamilyTags unitary;
    unitary.properties = {{Property::la, guaranteed}, {Property::lg, guaranteed},
                          {Property::ma, guaranteed}, {Property::mg, guaranteed},
                          {Property::a, fails_sometimes}, {Property::g, fails_sometimes}};
    t["unitary_offdiag"] = unitary;

    FamilyTags a_not_lg;
    a_not_lg.properties = {{Property::la, guaranteed}, {Property::a, guaranteed},
                           {Property::ma, guaranteed}, {Property::lg, fails_sometimes},
                           {Property::g, fails_sometimes}};
    t["norm_weighted"] = a_not_lg;
    t["bhatia_kittaneh"] = a_not_lg;

    t["gram"] = all_guaranteed(false);
    return t;
  }();
  return table;
}

FamilyInstance tagged(std::string family, BlockPsdMatrix block, double condition = 1.0) {
  FamilyTags tags = tag_table().at(family);
  return FamilyInstance{std::move(family), std::move(block), std::move(tags), condition};
}

ComplexMatrix square_input(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(what) + " must be square and nonempty");
  }
  require_finite(m, what);
  return m;
}

HermitianMatrix psd_input(const ComplexMatrix& m, const char* what, const ToleranceConfig& tol) {
  HermitianMatrix h(square_input(m, what), tol);
  const PsdCheck check = is_psd(h, tol);
  if (!check) {
    std::ostringstream os;
    os << what << " must be positive semidefinite (lambda_min = " << check.lambda_min << ")";
    throw InputError(os.str());
  }
  return h;
}

void same_dims(const ComplexMatrix& a, const ComplexMatrix& b, const char* family) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(family) + ": inputs must have equal dimensions");
  }
}

double condition_number(const ComplexMatrix& m) {
  const Spectrum s = singular_values(m);
  return s.min() > 0.0 ? s.max() / s.min() : std::numeric_limits<double>::infinity();
}

// Validates the parent [a x; x* b]; returns it re-read through validation.
BlockPsdMatrix parent_block(const ComplexMatrix& a, const ComplexMatrix& x, const ComplexMatrix& b,
                            const ToleranceConfig& tol, const char* family) {
  try {
    return BlockPsdMatrix::make(a, x, b, tol);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(family) + ": parent block matrix is not PSD: " + e.what(),
                          e.lambda_min());
  }
}

ComplexMatrix phi_map(const ComplexMatrix& m) {
  return m + m.trace() * ComplexMatrix::Identity(m.rows(), m.cols());
}

ComplexMatrix psi_map(const ComplexMatrix& m) {
  return 2.0 * m.trace() * ComplexMatrix::Identity(m.rows(), m.cols()) - m;
}

}  // namespace

FamilyInstance hua(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceConfig& tol,
                   double hua_margin) {
  same_dims(a, b, "hua");
  require_finite(a, "hua: a");
  require_finite(b, "hua: b");
  for (const ComplexMatrix* m : {&a, &b}) {
    const double s1 = spectral_norm(*m);
    if (s1 > 1.0 - hua_margin) {
      std::ostringstream os;
      os << "hua: inputs must be strict contractions with s1 <= " << 1.0 - hua_margin
         << ", got s1 = " << s1;
      throw InputError(os.str());
    }
  }
  const Eigen::Index n = a.cols();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix i_aa = id - a.adjoint() * a;
  const ComplexMatrix i_ba = id - b.adjoint() * a;
  const ComplexMatrix i_bb = id - b.adjoint() * b;
  const double cond =
      std::max({condition_number(i_aa), condition_number(i_ba), condition_number(i_bb)});
  const ComplexMatrix m11 = HermitianMatrix::hermitian_part(i_aa.llt().solve(id)).matrix();
  const ComplexMatrix m12 = i_ba.partialPivLu().solve(id);
  const ComplexMatrix m22 = HermitianMatrix::hermitian_part(i_bb.llt().solve(id)).matrix();
  return tagged("hua", BlockPsdMatrix::make(m11, m12, m22, tol), cond);
}

FamilyInstance phi_block(const ComplexMatrix& a, const ComplexMatrix& x, const ComplexMatrix& b,
                         const ToleranceConfig& tol) {
  const BlockPsdMatrix parent = parent_block(a, x, b, tol, "phi_block");
  return tagged("phi_block", BlockPsdMatrix::make(phi_map(parent.m11().matrix()),
                                                  phi_map(parent.m12()),
                                                  phi_map(parent.m22().matrix()), tol));
}

FamilyInstance psi_block(const ComplexMatrix& a, const ComplexMatrix& x, const ComplexMatrix& b,
                         const ToleranceConfig& tol) {
  const BlockPsdMatrix parent = parent_block(a, x, b, tol, "psi_block");
  return tagged("psi_block", BlockPsdMatrix::make(psi_map(parent.m11().matrix()),
                                                  psi_map(parent.m12()),
                                                  psi_map(parent.m22().matrix()), tol));
}

FamilyInstance sym_square(const ComplexMatrix& a, const ComplexMatrix& b,
                          const ToleranceConfig& tol) {
  same_dims(a, b, "sym_square");
  const HermitianMatrix ha(square_input(a, "sym_square: a"), tol);
  const HermitianMatrix hb(square_input(b, "sym_square: b"), tol);
  const ComplexMatrix& am = ha.matrix();
  const ComplexMatrix& bm = hb.matrix();
  const ComplexMatrix diag = am * am + bm * bm;
  const ComplexMatrix off = am * bm + bm * am;
  return tagged("sym_square", BlockPsdMatrix::make(diag, off, diag, tol));
}

FamilyInstance sum_diff(const ComplexMatrix& a, const ComplexMatrix& b,
                        const ToleranceConfig& tol) {
  same_dims(a, b, "sum_diff");
  const HermitianMatrix ha = psd_input(a, "sum_diff: a", tol);
  const HermitianMatrix hb = psd_input(b, "sum_diff: b", tol);
  const ComplexMatrix diag = (ha + hb).matrix();
  return tagged("sum_diff", BlockPsdMatrix::make(diag, (ha - hb).matrix(), diag, tol));
}

FamilyInstance unitary_offdiag(const ComplexMatrix& m11, const ComplexMatrix& u,
                               const ToleranceConfig& tol) {
  same_dims(m11, u, "unitary_offdiag");
  const HermitianMatrix h11 = psd_input(m11, "unitary_offdiag: m11", tol);
  if (!is_pd(h11, tol)) throw InputError("unitary_offdiag: m11 must be positive definite");
  require_finite(u, "unitary_offdiag: u");
  const double defect =
      spectral_norm(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
  if (defect > 1e-8) {
    std::ostringstream os;
    os << "unitary_offdiag: u is not unitary (||u*u - I|| = " << defect << ")";
    throw InputError(os.str());
  }
  const HermitianMatrix m22 = inverse(h11, tol).congruence(u);
  return tagged("unitary_offdiag", BlockPsdMatrix::make(h11.matrix(), u, m22.matrix(), tol),
                condition_number(h11.matrix()));
}

FamilyInstance norm_weighted(const ComplexMatrix& a, const ComplexMatrix& b,
                             const ToleranceConfig& tol) {
  same_dims(a, b, "norm_weighted");
  const HermitianMatrix ha = psd_input(a, "norm_weighted: a", tol);
  const HermitianMatrix hb = psd_input(b, "norm_weighted: b", tol);
  const double na = spectral_norm(ha.matrix());
  const double nb = spectral_norm(hb.matrix());
  if (na == 0.0 || nb == 0.0) throw InputError("norm_weighted: inputs must be nonzero");
  return tagged("norm_weighted", BlockPsdMatrix::make((ha * nb).matrix(),
                                                      ha.matrix() * hb.matrix(),
                                                      (hb * na).matrix(), tol));
}

FamilyInstance gram(const ComplexMatrix& a, const ToleranceConfig& tol) {
  const ComplexMatrix am = square_input(a, "gram: a");
  const Eigen::Index n = am.rows();
  return tagged("gram",
                BlockPsdMatrix::make(ComplexMatrix::Identity(n, n), am,
                                     HermitianMatrix::hermitian_part(am.adjoint() * am).matrix(),
                                     tol));
}

FamilyInstance bhatia_kittaneh(const ComplexMatrix& a, const ComplexMatrix& b,
                               const ToleranceConfig& tol) {
  same_dims(a, b, "bhatia_kittaneh");
  const ComplexMatrix am = psd_input(a, "bhatia_kittaneh: a", tol).matrix();
  const ComplexMatrix bm = psd_input(b, "bhatia_kittaneh: b", tol).matrix();
  return tagged("bhatia_kittaneh",
                BlockPsdMatrix::make(HermitianMatrix::hermitian_part(am * am).matrix(), am * bm,
                                     HermitianMatrix::hermitian_part(bm * bm).matrix(), tol));
}

FamilyTags family_tags(std::string_view family) {
  const auto& table = tag_table();
  const auto it = table.find(canonical_family(family));
  return it->second;
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, tags] : tag_table()) out.push_back(name);
    return out;
  }();
  return names;
}

std::string canonical_family(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '-', '_');
  static const std::map<std::string, std::string> aliases = {
      {"phi", "phi_block"}, {"psi", "psi_block"}, {"bk", "bhatia_kittaneh"}};
  if (const auto it = aliases.find(key); it != aliases.end()) key = it->second;
  if (tag_table().count(key) == 0) {
    std::string known;
    for (const std::string& n : family_names()) known += (known.empty() ? "" : ", ") + n;
    throw InputError("unknown family '" + std::string(name) + "'; known families: " + known);
  }
  return key;
}

}  // namespace psdb
