// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff every
// criterion passes within its time budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "psdb/compound.hpp"
#include "psdb/fixtures.hpp"
#include "psdb/means.hpp"
#include "psdb/rng.hpp"
#include "psdb/search.hpp"

using namespace psdb;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

ComplexMatrix random_pd(Rng& rng, Eigen::Index n) {
  const ComplexMatrix g = gaussian_matrix(rng, n, n, false);
  const ComplexMatrix h = g * g.adjoint();
  return (h + h.adjoint()) * 0.5 + ComplexMatrix::Identity(n, n) * (0.05 * h.trace().real() / n);
}

double rel(const ComplexMatrix& x, const ComplexMatrix& ref) {
  return spectral_norm(x - ref) / std::max(1.0, spectral_norm(ref));
}

// Every spectral value within `tol` of the printed one.
bool spectrum_close(const Spectrum& s, const std::vector<double>& printed, double scale,
                    double tol, double& worst) {
  bool ok = s.size() == printed.size();
  for (std::size_t j = 0; ok && j < printed.size(); ++j) {
    worst = std::max(worst, std::abs(s[j] * scale - printed[j]));
    ok = worst <= tol;
  }
  return ok;
}

// ---------------------------------------------------------------------------

Outcome rank_one_counterexample() {
  const PropertyProfile p = property_profile(rank_one_la_failure());
  const double two_s1 = 2.0 * p.offdiag_singular_values[0];
  const double l1 = p.sum_eigenvalues[0];
  const bool ok = two_s1 == 2.0 && l1 == 1.0 && !p.holds(Property::la) &&
                  p[Property::la].first_violation() == std::optional<std::size_t>(0);
  return {ok, "2 s1 = " + num(two_s1) + ", lambda1 = " + num(l1) + ", la " +
                  (p.holds(Property::la) ? "holds" : "fails")};
}

Outcome la_only_fixture() {
  const PropertyProfile p = property_profile(la_only_instance());
  double worst = 0.0;
  bool ok = spectrum_close(p.mean_eigenvalues, {7.2176, 5.5156, 1.0415}, 1.0, 2e-3, worst);
  ok = spectrum_close(p.offdiag_singular_values, {8.7154, 3.2243, 1.4755}, 1.0, 2e-3, worst) && ok;
  ok = spectrum_close(p.sum_eigenvalues, {26.9680, 9.2207, 1.0879}, 0.5, 2e-3, worst) && ok;
  ok = ok && p.holds(Property::la) && !p.holds(Property::lg) && !p.holds(Property::a);
  return {ok, "max spectral deviation " + num(worst) + ", region " + p.region()};
}

Outcome lg_a_without_g_fixture() {
  const PropertyProfile p = property_profile(lg_a_without_g_instance());
  double worst = 0.0;
  bool ok = spectrum_close(p.mean_eigenvalues, {3.0760, 0.6502}, 1.0, 2e-3, worst);
  ok = spectrum_close(p.offdiag_singular_values, {2.8284, 0.7071}, 1.0, 2e-3, worst) && ok;
  ok = spectrum_close(p.sum_eigenvalues, {4.5000, 1.5000}, 0.5, 2e-3, worst) && ok;
  ok = ok && p.holds(Property::lg) && p.holds(Property::a) && !p.holds(Property::g);
  return {ok, "max spectral deviation " + num(worst) + ", region " + p.region()};
}

Outcome unitary_swap_fixture() {
  const FamilyInstance inst = unitary_swap_instance();
  const BlockPsdMatrix& m = inst.block;
  const ComplexMatrix s = m.m11().matrix() + m.m12().adjoint() * inverse(m.m11()).matrix() * m.m12();
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 0) = 1.5;
  expected(1, 1) = 3.0;
  const PropertyProfile p = property_profile(m);
  const bool ok = s == expected && !p.holds(Property::a);
  return {ok, "m11 + m12* m11^-1 m12 = diag(" + num(s(0, 0).real()) + ", " + num(s(1, 1).real()) +
                  "), a " + (p.holds(Property::a) ? "holds" : "fails")};
}

Outcome norm_weighted_fixture() {
  const HermitianMatrix a(norm_weighted_a());
  const HermitianMatrix b(norm_weighted_b());
  const double lhs = std::sqrt(spectral_norm(a.matrix()) * spectral_norm(b.matrix())) *
                     spectral_norm(geometric_mean_pd(a, b).value.matrix());
  const double ab = spectral_norm(a.matrix() * b.matrix());
  const PropertyProfile p = property_profile(norm_weighted_instance().block);
  const bool ok = std::abs(lhs - 1.2055) <= 1e-3 && std::abs(ab - 2.6515) <= 1e-3 &&
                  p[Property::lg].first_violation() == std::optional<std::size_t>(0);
  return {ok, "sqrt(|A||B|)|A#B| = " + num(lhs) + ", |AB| = " + num(ab) + ", lg first fails at k=" +
                  (p[Property::lg].first_violation() ? std::to_string(*p[Property::lg].first_violation() + 1)
                                                     : "-")};
}

Outcome ppt_lg_suite() {
  struct Source {
    std::string spec;
    Eigen::Index n;
    std::size_t count;
  };
  const std::vector<Source> sources = {
      {"ppt_rejection", 2, 500},      {"ppt_rejection", 3, 500},     {"ppt_separable", 2, 500},
      {"ppt_separable", 3, 500},      {"ppt_separable", 4, 500},     {"family:hua", 3, 200},
      {"family:phi_block", 3, 200},   {"family:psi_block", 3, 200},  {"family:sym_square", 3, 200},
      {"family:sum_diff", 3, 200}};
  std::size_t total = 0, violations = 0, errors = 0, not_ppt = 0;
  double worst = 1e300;
  for (const Source& s : sources) {
    const GeneratorSpec spec = GeneratorSpec::parse(s.spec, s.n, 2024);
    for (std::size_t i = 0; i < s.count; ++i) {
      try {
        const BlockSample b = sample_block(spec, i);
        not_ppt += !is_ppt(b.block);
        const PropertyVerdict& lg = property_profile(b.block)[Property::lg];
        for (std::size_t k = 0; k < lg.margins.size(); ++k) {
          worst = std::min(worst, lg.margins[k] / lg.slack[k]);
          if (lg.margins[k] < -kConfirmFactor * lg.slack[k]) {
            ++violations;
            break;
          }
        }
        ++total;
      } catch (const Error&) {
        ++errors;
      }
    }
  }
  return {violations == 0 && errors == 0 && not_ppt == 0,
          std::to_string(total) + " PPT samples, " + std::to_string(violations) +
              " lg violations, " + std::to_string(errors) + " errors, non-PPT " +
              std::to_string(not_ppt) + ", min margin/slack " + num(worst)};
}

Outcome two_by_two_branch_suite() {
  const GeneratorSpec spec = GeneratorSpec::parse("block_psd", 2, 2101);
  std::size_t la = 0, violations = 0, a_only = 0, lg_only = 0, both = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const BlockSample s = sample_block(spec, i);
    const PropertyProfile p = property_profile(s.block);
    if (!p.holds(Property::la)) continue;
    ++la;
    try {
      switch (two_by_two_la_branch(s.block)) {
        case Branch::a: ++a_only; break;
        case Branch::lg: ++lg_only; break;
        case Branch::both: ++both; break;
      }
    } catch (const Error&) {
      ++violations;
    }
  }
  return {violations == 0 && la > 0,
          std::to_string(la) + " la instances (a only " + std::to_string(a_only) + ", lg only " +
              std::to_string(lg_only) + ", both " + std::to_string(both) + "), violations " +
              std::to_string(violations)};
}

Outcome unitary_offdiag_suite() {
  std::size_t bad = 0;
  double min_prod = 1e300;
  for (Eigen::Index n : {2, 3}) {
    const GeneratorSpec spec = GeneratorSpec::parse("family:unitary_offdiag", n, 4101);
    for (std::size_t i = 0; i < 250; ++i) {
      const PropertyProfile p = property_profile(sample_block(spec, i).block);
      double prod = 1.0;
      bool ok = p.holds(Property::lg);
      for (double l : p.mean_eigenvalues) {
        prod *= l;
        min_prod = std::min(min_prod, prod);
        ok = ok && prod >= 1.0 - 1e-7;
      }
      bad += !ok;
    }
  }
  return {bad == 0, "500 draws, min partial product " + num(min_prod) + ", failures " +
                        std::to_string(bad)};
}

Outcome norm_weighted_suite() {
  Rng rng(4401);
  const ToleranceConfig tol;
  std::size_t bad = 0;
  double worst = 1e300;
  for (int trial = 0; trial < 500; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    const ComplexMatrix a = ginibre_psd(rng, n, 1 + rng.uniform_int(0, n - 1), false);
    const ComplexMatrix b = ginibre_psd(rng, n, 1 + rng.uniform_int(0, n - 1), false);
    const Spectrum s = singular_values(a * b);
    const Spectrum l = eigenvalues(HermitianMatrix::hermitian_part(
        a * spectral_norm(b) + b * spectral_norm(a)));
    for (Eigen::Index j = 0; j < n; ++j) {
      const double margin = l[j] - 2.0 * s[j];
      worst = std::min(worst, margin / tol.slack(l[j]));
      if (margin < -tol.slack(l[j])) ++bad;
    }
  }
  return {bad == 0, "500 pairs, min margin/slack " + num(worst) + ", violations " +
                        std::to_string(bad)};
}

Outcome compound_suite() {
  Rng rng(1001);
  const ToleranceConfig tol;
  double mult = 0, adj = 0, top = 0, comm = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 1 + trial % 5;
    const ComplexMatrix x = gaussian_matrix(rng, n, n, false);
    const ComplexMatrix y = gaussian_matrix(rng, n, n, false);
    const HermitianMatrix a(random_pd(rng, n));
    const HermitianMatrix b(random_pd(rng, n));
    for (Eigen::Index k = 1; k <= n; ++k) {
      mult = std::max(mult, compound_multiplicativity_check(x, y, k));
      adj = std::max(adj, rel(compound(x.adjoint(), k), compound(x, k).adjoint()));
      top = std::max(top, top_singular_product_check(x, k));
      comm = std::max(comm, compound_gm_commutation_check(a, b, k, tol));
    }
  }
  std::size_t ppt_fail = 0;
  // Rejection sampling is too slow at n = 4, so the separable ensemble covers it.
  const std::vector<std::tuple<const char*, Eigen::Index, std::size_t>> ppt_sources = {
      {"ppt_separable", 3, 50}, {"ppt_rejection", 3, 50}, {"ppt_separable", 4, 100}};
  for (const auto& [ens, n, count] : ppt_sources) {
    const GeneratorSpec spec = GeneratorSpec::parse(ens, n, 1002);
    for (std::size_t i = 0; i < count; ++i) {
      const BlockSample s = sample_block(spec, i);
      for (Eigen::Index k = 1; k <= n; ++k) ppt_fail += !compound_block_ppt_check(s.block, k, tol);
    }
  }
  const bool ok = mult <= 1e-8 && adj <= 1e-8 && top <= 1e-8 && comm <= 1e-8 && ppt_fail == 0;
  return {ok, "residuals: mult " + num(mult) + ", adjoint " + num(adj) + ", top " + num(top) +
                  ", gm " + num(comm) + "; compound PPT failures " + std::to_string(ppt_fail) +
                  " over 200 samples"};
}

Outcome means_suite() {
  Rng rng(1101);
  const ToleranceConfig tol;
  double ric = 0, sym = 0, detr = 0, amgm = 1e300;
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index n = 2 + trial % 5;
    const HermitianMatrix a(random_pd(rng, n));
    const HermitianMatrix b(random_pd(rng, n));
    const GeometricMeanResult ab = geometric_mean_pd(a, b, tol);
    const GeometricMeanResult ba = geometric_mean_pd(b, a, tol);
    ric = std::max(ric, *ab.riccati_residual);
    const double scale = std::max(spectral_norm(a.matrix()), spectral_norm(b.matrix()));
    sym = std::max(sym, spectral_norm(ab.value.matrix() - ba.value.matrix()) / scale);
    detr = std::max(detr, det_gm_identity_check(a, b, tol));
    for (double m : amgm_eigen_check(a, b, tol)) amgm = std::min(amgm, m);
  }
  double limit = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index n = 1 + trial % 5;
    std::vector<double> da(n), db(n), dg(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      da[i] = rng.uniform() < 0.4 ? 0.0 : rng.uniform(0.0, 4.0);
      db[i] = rng.uniform() < 0.4 ? 0.0 : rng.uniform(0.0, 4.0);
      dg[i] = std::sqrt(da[i] * db[i]);
    }
    const GeometricMeanResult g =
        geometric_mean_psd(HermitianMatrix::diagonal(da), HermitianMatrix::diagonal(db), tol);
    limit = std::max(limit, spectral_norm(g.value.matrix() - HermitianMatrix::diagonal(dg).matrix()));
  }
  const bool ok = ric <= 1e-8 && sym <= 1e-8 && detr <= 1e-8 && amgm >= -1e-9 && limit <= 1e-7;
  return {ok, "riccati " + num(ric) + ", symmetry " + num(sym) + ", det " + num(detr) +
                  ", min AM-GM margin " + num(amgm) + ", eps-limit vs closed form " + num(limit)};
}

Outcome gram_equality_suite() {
  Rng rng(1201);
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 1 + trial % 4;
    // Every other draw is rank deficient, so I # a*a goes through the limit.
    const Eigen::Index r = (trial % 2 == 0 || n == 1) ? n : n - 1;
    const ComplexMatrix a = gaussian_matrix(rng, n, r, false) * gaussian_matrix(rng, r, n, false);
    const Spectrum s = singular_values(a);
    const GeometricMeanResult g = geometric_mean_psd(
        HermitianMatrix::identity(n), HermitianMatrix::hermitian_part(a.adjoint() * a));
    const Spectrum l = eigenvalues(g.value);
    for (Eigen::Index j = 0; j < n; ++j) worst = std::max(worst, std::abs(s[j] - l[j]));
  }
  return {worst <= 1e-7, "max |s_j(a) - lambda_j(I # a*a)| = " + num(worst)};
}

Outcome norm_chain_suite() {
  Rng rng(1301);
  const ToleranceConfig tol;
  std::size_t bad = 0, strict = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    const HermitianMatrix a(random_pd(rng, n));
    const HermitianMatrix b(random_pd(rng, n));
    const double g2 = spectral_norm(
        geometric_mean_pd(HermitianMatrix::hermitian_part(a.matrix() * a.matrix()),
                          HermitianMatrix::hermitian_part(b.matrix() * b.matrix()), tol)
            .value.matrix());
    const double g = spectral_norm(geometric_mean_pd(a, b, tol).value.matrix());
    const double ab = spectral_norm(a.matrix() * b.matrix());
    bad += !(g2 <= g * g + tol.slack(g * g) && g * g <= ab + tol.slack(ab));
    strict += (g2 < g * g * (1 - 1e-9)) && (g * g < ab * (1 - 1e-9));
  }
  return {bad == 0, "200 pairs, violations " + std::to_string(bad) + ", strict on both sides " +
                        std::to_string(strict)};
}

Outcome conjecture_suite() {
  std::ostringstream os;
  bool ok = true;
  std::size_t confirmed = 0;
  for (Conjecture c : {Conjecture::phi_g, Conjecture::psi_a, Conjecture::psi_g}) {
    for (Eigen::Index n : {2, 3}) {
      const ConjectureReport r = conjecture_run(c, n, 10000, 1401);
      double min_margin = 1e300;
      for (const IndexStats& s : r.per_index) min_margin = std::min(min_margin, s.min_margin);
      os << to_string(c) << " n=" << n << ": violations " << r.violations << ", min margin "
         << num(min_margin) << "; ";
      ok = ok && r.failures == 0;
      confirmed += r.confirmed.size();
      for (const auto& [index, seed] : r.confirmed) {
        std::printf("NOTE  confirmed %s violation at n=%ld sample %zu (stream seed %llu)\n",
                    std::string(to_string(c)).c_str(), static_cast<long>(n), index,
                    static_cast<unsigned long long>(seed));
      }
    }
  }
  os << "confirmed " << confirmed;
  return {ok, os.str()};
}

Outcome venn_substitute() {
  std::ostringstream os;
  bool ok = true;
  for (Eigen::Index n : {2, 3}) {
    const CensusReport r = census(GeneratorSpec::parse("block_psd", n, 1501), 1000);
    ok = ok && r.lattice_violations == 0 && r.total == 1000;
    os << "n=" << n << " {";
    bool first = true;
    for (const auto& [name, st] : r.regions) {
      os << (first ? "" : ", ") << name << ": " << st.count;
      first = false;
    }
    os << "}; ";
  }
  const std::vector<std::pair<std::string, std::string>> fixtures = {
      {property_profile(gram_instance().block).region(), "a+g+la+lg"},
      {property_profile(la_only_instance()).region(), "la"},
      {property_profile(lg_a_without_g_instance()).region(), "a+la+lg"},
      {property_profile(norm_weighted_instance().block).region(), "a+la"},
      {property_profile(unitary_swap_instance().block).region(), "la+lg"}};
  os << "fixtures:";
  for (const auto& [got, want] : fixtures) {
    os << " " << got << (got == want ? "" : " (expected " + want + ")");
    ok = ok && got == want;
  }
  return {ok, os.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1", "rank-one 4x4 la counterexample", 1, rank_one_counterexample},
      {"2", "3x3 la-only instance spectra and verdicts", 1, la_only_fixture},
      {"3", "2x2 lg and a without g instance", 1, lg_a_without_g_fixture},
      {"4", "unitary swap instance fails a", 1, unitary_swap_fixture},
      {"5", "norm-weighted scalars and lg failure at k=1", 1, norm_weighted_fixture},
      {"6", "PPT ensembles and families have lg", 120, ppt_lg_suite},
      {"7", "n=2 la instances have a or lg", 60, two_by_two_branch_suite},
      {"8", "unitary off-diagonal products >= 1", 60, unitary_offdiag_suite},
      {"9", "2 s_j(AB) <= lambda_j(|B|A + |A|B)", 60, norm_weighted_suite},
      {"10", "compound identities and PPT preservation", 120, compound_suite},
      {"11", "geometric mean core identities", 60, means_suite},
      {"12", "s_j(a) = lambda_j(I # a*a)", 60, gram_equality_suite},
      {"13", "|A^2 # B^2| <= |A # B|^2 <= |AB|", 60, norm_chain_suite},
      {"14", "phi/psi conjecture harnesses (report)", 300, conjecture_suite},
      {"V", "region census with fixture witnesses", 120, venn_substitute},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s [%s] %s (%.2fs of %.0fs): %s%s\n", pass ? "PASS" : "FAIL", c.id.c_str(),
                c.title.c_str(), secs, c.budget_seconds, o.detail.c_str(),
                in_time ? "" : " [over time budget]");
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
