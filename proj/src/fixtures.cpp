#include "psdb/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace psdb {

namespace {

ComplexMatrix real_matrix(Eigen::Index rows, Eigen::Index cols, std::initializer_list<double> v) {
  ComplexMatrix m(rows, cols);
  auto it = v.begin();
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = *it++;
  }
  return m;
}

HermitianMatrix square_of(const ComplexMatrix& p) { return HermitianMatrix::hermitian_part(p * p); }

}  // namespace

BlockPsdMatrix rank_one_la_failure() {
  const ComplexMatrix full = real_matrix(4, 4, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1});
  return make_block(full.topLeftCorner(2, 2), full.topRightCorner(2, 2),
                    full.bottomRightCorner(2, 2));
}

BlockPsdMatrix la_only_instance() {
  const ComplexMatrix p = real_matrix(3, 3, {1.7353, -0.2433, 1.7146,   //
                                             -0.2433, 1.6438, 0.7227,   //
                                             1.7146, 0.7227, 6.6795});
  const ComplexMatrix q = real_matrix(3, 3, {2.7266, -1.3731, -0.0930,  //
                                             -1.3731, 2.3151, 0.0859,   //
                                             -0.0930, 0.0859, 0.7646});
  // Printed at four decimals this x has s1 slightly above 1; from_contraction
  // rescales it.
  const ComplexMatrix x = real_matrix(3, 3, {-0.0445, -0.9170, -0.3964,  //
                                             0.6927, -0.3142, 0.6492,    //
                                             -0.7198, -0.2457, 0.6492});
  return from_contraction(square_of(p), square_of(q), x);
}

BlockPsdMatrix lg_a_without_g_instance() {
  const double d[] = {1.0, 4.0};
  const ComplexMatrix r = real_matrix(2, 2, {2, -1, -1, 1});
  const ComplexMatrix x = real_matrix(2, 2, {-1, 1, 1, 1}) * (std::numbers::sqrt2 / 2.0);
  return from_contraction(HermitianMatrix::diagonal(d), square_of(r), x);
}

FamilyInstance unitary_swap_instance() {
  return unitary_offdiag(real_matrix(2, 2, {1, 0, 0, 2}), real_matrix(2, 2, {0, 1, 1, 0}));
}

ComplexMatrix norm_weighted_a() { return real_matrix(2, 2, {1.7, 1.3, 1.3, 1.0}); }
ComplexMatrix norm_weighted_b() { return real_matrix(2, 2, {2.2, -1.5, -1.5, 1.1}); }

FamilyInstance norm_weighted_instance() {
  return norm_weighted(norm_weighted_a(), norm_weighted_b());
}

FamilyInstance gram_instance() { return gram(real_matrix(2, 2, {1, 2, 0, 1})); }

bool FixtureGroup::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const FixtureCheck& c) { return c.pass; });
}

namespace {

void check_value(FixtureGroup& g, std::string label, double expected, double actual, double tol) {
  const bool ok = std::abs(actual - expected) <= tol;
  g.checks.push_back({std::move(label), expected, actual, tol, ok});
}

void check_verdict(FixtureGroup& g, const PropertyProfile& p, Property q, bool expected) {
  const bool holds = p.holds(q);
  g.checks.push_back({std::string(to_string(q)) + (expected ? " holds" : " fails"),
                      expected ? 1.0 : 0.0, holds ? 1.0 : 0.0, 0.0, holds == expected});
}

void check_spectrum(FixtureGroup& g, const std::string& name, const std::vector<double>& expected,
                    const Spectrum& actual, double scale, double tol) {
  for (std::size_t j = 0; j < expected.size(); ++j) {
    const double v = j < actual.size() ? actual[j] * scale : std::nan("");
    check_value(g, name + "[" + std::to_string(j + 1) + "]", expected[j], v, tol);
  }
}

constexpr double kSpectrumTol = 2e-3;
constexpr double kScalarTol = 1e-3;

}  // namespace

std::vector<FixtureGroup> verify_fixtures(const ToleranceConfig& tol) {
  std::vector<FixtureGroup> groups;

  {
    FixtureGroup g{"rank-one la failure", {}};
    const BlockPsdMatrix m = rank_one_la_failure();
    const PropertyProfile p = property_profile(m, tol);
    check_value(g, "2 s1(m12)", 2.0, 2.0 * p.offdiag_singular_values[0], 0.0);
    check_value(g, "lambda1(m11 + m22)", 1.0, p.sum_eigenvalues[0], 0.0);
    check_value(g, "la margin k=1", -1.0, p[Property::la].margins[0], 0.0);
    check_verdict(g, p, Property::la, false);
    groups.push_back(std::move(g));
  }

  {
    FixtureGroup g{"la-only 3x3 instance", {}};
    const PropertyProfile p = property_profile(la_only_instance(), tol);
    check_spectrum(g, "lambda(m11 # m22)", {7.2176, 5.5156, 1.0415}, p.mean_eigenvalues, 1.0,
                   kSpectrumTol);
    check_spectrum(g, "s(m12)", {8.7154, 3.2243, 1.4755}, p.offdiag_singular_values, 1.0,
                   kSpectrumTol);
    check_spectrum(g, "lambda((m11 + m22)/2)", {26.9680, 9.2207, 1.0879}, p.sum_eigenvalues, 0.5,
                   kSpectrumTol);
    check_verdict(g, p, Property::la, true);
    check_verdict(g, p, Property::lg, false);
    check_verdict(g, p, Property::a, false);
    groups.push_back(std::move(g));
  }

  {
    FixtureGroup g{"lg and a without g 2x2 instance", {}};
    const PropertyProfile p = property_profile(lg_a_without_g_instance(), tol);
    check_spectrum(g, "lambda(m11 # m22)", {3.0760, 0.6502}, p.mean_eigenvalues, 1.0, kSpectrumTol);
    check_spectrum(g, "s(m12)", {2.8284, 0.7071}, p.offdiag_singular_values, 1.0, kSpectrumTol);
    check_spectrum(g, "lambda((m11 + m22)/2)", {4.5000, 1.5000}, p.sum_eigenvalues, 0.5,
                   kSpectrumTol);
    check_verdict(g, p, Property::lg, true);
    check_verdict(g, p, Property::a, true);
    check_verdict(g, p, Property::g, false);
    groups.push_back(std::move(g));
  }

  {
    FixtureGroup g{"unitary swap instance", {}};
    const FamilyInstance inst = unitary_swap_instance();
    const BlockPsdMatrix& m = inst.block;
    const ComplexMatrix s = m.m11().matrix() + m.m12().adjoint() * inverse(m.m11(), tol).matrix() *
                                                   m.m12();
    const double expected[2][2] = {{1.5, 0.0}, {0.0, 3.0}};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        check_value(g, "(m11 + m12* m11^-1 m12)(" + std::to_string(i + 1) + "," +
                           std::to_string(j + 1) + ")",
                    expected[i][j], s(i, j).real(), 0.0);
        check_value(g, "imag part (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")",
                    0.0, s(i, j).imag(), 0.0);
      }
    }
    const PropertyProfile p = property_profile(m, tol);
    check_verdict(g, p, Property::a, false);
    check_verdict(g, p, Property::lg, true);
    groups.push_back(std::move(g));
  }

  {
    FixtureGroup g{"norm-weighted lg failure", {}};
    const HermitianMatrix a(norm_weighted_a(), tol);
    const HermitianMatrix b(norm_weighted_b(), tol);
    const double na = spectral_norm(a.matrix());
    const double nb = spectral_norm(b.matrix());
    const GeometricMeanResult gm = geometric_mean_pd(a, b, tol);
    check_value(g, "sqrt(||A|| ||B||) ||A # B||", 1.2055,
                std::sqrt(na * nb) * spectral_norm(gm.value.matrix()), kScalarTol);
    check_value(g, "||AB||", 2.6515, spectral_norm(a.matrix() * b.matrix()), kScalarTol);
    const PropertyProfile p = property_profile(norm_weighted_instance().block, tol);
    const auto first = p[Property::lg].first_violation();
    g.checks.push_back({"lg first violation at k", 1.0, first ? double(*first + 1) : 0.0, 0.0,
                        first.has_value() && *first == 0});
    check_verdict(g, p, Property::a, true);
    groups.push_back(std::move(g));
  }

  return groups;
}

}  // namespace psdb
