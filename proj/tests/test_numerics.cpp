#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "psdb/numerics.hpp"
#include "psdb/rng.hpp"

using namespace psdb;

namespace {

ComplexMatrix real2(double a, double b, double c, double d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

HermitianMatrix diag(std::initializer_list<double> d) {
  const std::vector<double> v(d);
  return HermitianMatrix::diagonal(v);
}

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

TEST(Tolerance, DefaultsAndSlack) {
  const ToleranceConfig tol;
  EXPECT_DOUBLE_EQ(tol.psd_tol, 1e-9);
  EXPECT_DOUBLE_EQ(tol.slack(0.5), 2e-9);
  EXPECT_DOUBLE_EQ(tol.slack(10.0), 1e-9 + 1e-8);
  EXPECT_NO_THROW(tol.validate());
  ToleranceConfig bad;
  bad.gm_eps_shrink = 1.5;
  EXPECT_THROW(bad.validate(), InputError);
  bad = {};
  bad.cmp_atol = -1.0;
  EXPECT_THROW(bad.validate(), InputError);
}

TEST(Spectrum, SortsNonincreasing) {
  const Spectrum s({1.0, 3.0, 2.0});
  EXPECT_EQ(s.values(), (std::vector<double>{3.0, 2.0, 1.0}));
  EXPECT_EQ(s.max(), 3.0);
  EXPECT_EQ(s.min(), 1.0);
}

TEST(HermitianMatrix, SymmetrizesWithinTolerance) {
  ComplexMatrix m = real2(1.0, 2.0 + 1e-10, 2.0, 3.0);
  const HermitianMatrix h(m);
  EXPECT_EQ(h(0, 1), h(1, 0));
  EXPECT_EQ(hermitian_defect(h.matrix()), 0.0);
}

TEST(HermitianMatrix, RejectsAsymmetryAndNonFinite) {
  EXPECT_THROW(HermitianMatrix(real2(1.0, 2.0, 0.0, 1.0)), InputError);
  EXPECT_THROW(HermitianMatrix(ComplexMatrix::Zero(2, 3)), InputError);
  EXPECT_THROW(HermitianMatrix(real2(std::nan(""), 0.0, 0.0, 1.0)), InputError);
}

TEST(Eig, DiagonalCase) {
  const EigenDecomposition e = eig_hermitian(diag({1.0, 2.0}));
  EXPECT_EQ(e.values.values(), (std::vector<double>{2.0, 1.0}));
}

TEST(Eig, ArithmeticMeanOfSmallFixture) {
  const Spectrum s = eigenvalues(HermitianMatrix(real2(3.0, -1.5, -1.5, 3.0)));
  EXPECT_NEAR(s[0], 4.5, 1e-14);
  EXPECT_NEAR(s[1], 1.5, 1e-14);
}

TEST(Eig, ReconstructionResidualOnRandomHermitian) {
  Rng rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index n = 1 + trial % 8;
    const HermitianMatrix h = HermitianMatrix::hermitian_part(random_hermitian(rng, n));
    const EigenDecomposition e = eig_hermitian(h);
    Eigen::VectorXd d(n);
    for (Eigen::Index j = 0; j < n; ++j) d(j) = e.values[j];
    const ComplexMatrix& v = e.vectors;
    const double norm = spectral_norm(h.matrix());
    const double resid = spectral_norm(h.matrix() * v - v * d.asDiagonal());
    ASSERT_LE(resid, 10.0 * n * kEps * norm) << "n=" << n << " trial " << trial;
    ASSERT_LE(spectral_norm(v.adjoint() * v - ComplexMatrix::Identity(n, n)), 1e-12);
    for (Eigen::Index j = 1; j < n; ++j) ASSERT_GE(e.values[j - 1], e.values[j]);
  }
}

TEST(Eig, FiveByFiveReconstructsToRelative1e10) {
  Rng rng(3);
  const HermitianMatrix h = HermitianMatrix::hermitian_part(random_hermitian(rng, 5));
  const EigenDecomposition e = eig_hermitian(h);
  Eigen::VectorXd d(5);
  for (int j = 0; j < 5; ++j) d(j) = e.values[j];
  const ComplexMatrix back = e.vectors * d.asDiagonal() * e.vectors.adjoint();
  EXPECT_LE(oracle::rel_err(back, h.matrix()), 1e-10);
}

TEST(SingularValues, SmallCases) {
  const Spectrum z = singular_values(ComplexMatrix::Zero(3, 3));
  for (double v : z) EXPECT_EQ(v, 0.0);
  const Spectrum swap = singular_values(real2(0, 1, 1, 0));
  EXPECT_NEAR(swap[0], 1.0, 1e-15);
  EXPECT_NEAR(swap[1], 1.0, 1e-15);
}

TEST(SingularValues, MatchSquareRootOfGram) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 1 + trial % 6;
    const ComplexMatrix x = gaussian_matrix(rng, n, n, false);
    const Spectrum s = singular_values(x);
    const HermitianMatrix root = sqrt_psd(HermitianMatrix::hermitian_part(x.adjoint() * x));
    const Spectrum ref = eigenvalues(root);
    for (Eigen::Index j = 0; j < n; ++j) {
      ASSERT_NEAR(s[j], ref[j], 1e-10 * std::max(1.0, s[0]));
      ASSERT_GE(s[j], 0.0);
    }
  }
}

TEST(SingularValues, HaarUnitariesHaveUnitSpectrum) {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 1 + trial % 6;
    for (double s : singular_values(haar_unitary(rng, n, trial % 2 == 0))) {
      ASSERT_NEAR(s, 1.0, 1e-10);
    }
  }
}

TEST(IsPsd, Basics) {
  EXPECT_TRUE(is_psd(HermitianMatrix::identity(3)).psd);
  const PsdCheck c = is_psd(diag({1.0, -1e-3}));
  EXPECT_FALSE(c.psd);
  EXPECT_NEAR(c.lambda_min, -1e-3, 1e-15);
  EXPECT_NEAR(std::abs(c.witness(1)), 1.0, 1e-12);
  // Within the relative floor.
  EXPECT_TRUE(is_psd(diag({1.0, -1e-10})).psd);
}

TEST(IsPsd, RankOneFourByFourIsPsd) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 1.0;
  EXPECT_TRUE(is_psd(HermitianMatrix(m)).psd);
}

TEST(SqrtPsd, ClosedForms) {
  const HermitianMatrix r = sqrt_psd(diag({4.0, 9.0}));
  EXPECT_NEAR(r(0, 0).real(), 2.0, 1e-15);
  EXPECT_NEAR(r(1, 1).real(), 3.0, 1e-15);
  EXPECT_LE(oracle::rel_err(sqrt_psd(HermitianMatrix::identity(4)).matrix(),
                            ComplexMatrix::Identity(4, 4)),
            1e-15);
}

TEST(SqrtPsd, SquaresBack) {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 1 + trial % 6;
    const HermitianMatrix h(ginibre_psd(rng, n, 1 + trial % n, false));
    const HermitianMatrix r = sqrt_psd(h);
    ASSERT_TRUE(is_psd(r).psd);
    ASSERT_LE(oracle::rel_err(r.matrix() * r.matrix(), h.matrix()), 1e-10);
  }
  const HermitianMatrix g(ginibre_psd(rng, 5, 5, false));
  EXPECT_LE(oracle::rel_err(sqrt_psd(g).matrix() * sqrt_psd(g).matrix(), g.matrix()), 1e-10);
}

TEST(SqrtPsd, ClampsTinyNegativesAndRejectsLargeOnes) {
  const HermitianMatrix r = sqrt_psd(diag({1.0, -1e-12}));
  EXPECT_EQ(r(1, 1).real(), 0.0);
  EXPECT_THROW(sqrt_psd(diag({1.0, -1e-3})), DomainError);
}

TEST(Inverse, DiagonalAndSingular) {
  const HermitianMatrix inv = inverse(diag({1.0, 2.0}));
  EXPECT_NEAR(inv(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(inv(1, 1).real(), 0.5, 1e-15);
  EXPECT_THROW(inverse(diag({1.0, 0.0})), SingularityError);
  const HermitianMatrix p = pseudo_inverse(diag({1.0, 0.0}), 1e-12);
  EXPECT_NEAR(p(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(p(1, 1)), 0.0, 1e-15);
}

TEST(Inverse, RandomPdIdentity) {
  Rng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 1 + trial % 6;
    const HermitianMatrix h(oracle::random_pd(rng, n));
    const ComplexMatrix prod = h.matrix() * inverse(h).matrix();
    ASSERT_LE(oracle::rel_err(prod, ComplexMatrix::Identity(n, n)), 1e-10);
  }
}

TEST(PseudoInverse, MoorePenroseIdentities) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 2 + trial % 4;
    // Rank deficient half the time.
    const Eigen::Index rank = (trial % 2 == 0) ? n : 1 + trial % (n - 1);
    const HermitianMatrix h(ginibre_psd(rng, n, rank, false));
    const ComplexMatrix a = h.matrix();
    const ComplexMatrix p = pseudo_inverse(h, 1e-10).matrix();
    const double scale = std::max(1.0, a.norm());
    ASSERT_LE((a * p * a - a).norm() / scale, 1e-10);
    ASSERT_LE((p * a * p - p).norm() / std::max(1.0, p.norm()), 1e-10);
    ASSERT_LE(((a * p).adjoint() - a * p).norm(), 1e-10);
    ASSERT_LE(((p * a).adjoint() - p * a).norm(), 1e-10);
  }
}

TEST(SchurComplement, AgreesWithAssembledPsdTest) {
  Rng rng(37);
  const ToleranceConfig tol;
  int agree = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index n = 1 + trial % 4;
    const HermitianMatrix m(ginibre_psd(rng, 2 * n, 1 + trial % (2 * n), false));
    const ComplexMatrix& full = m.matrix();
    HermitianMatrix m11 = HermitianMatrix::hermitian_part(full.topLeftCorner(n, n));
    HermitianMatrix m22 = HermitianMatrix::hermitian_part(full.bottomRightCorner(n, n));
    ComplexMatrix m12 = full.topRightCorner(n, n);
    // Perturb half the draws so both answers occur.
    if (trial % 2 == 1) m12 *= 1.5;
    const bool expected = is_psd(HermitianMatrix::hermitian_part(assemble_blocks(
                                     m11.matrix(), m12, m22.matrix())),
                                 tol)
                              .psd;
    agree += expected == schur_complement_psd(m11, m12, m22, tol);
  }
  EXPECT_EQ(agree, 300);
}

TEST(SchurComplement, ZeroOffDiagonalAndRangeCondition) {
  const HermitianMatrix m11 = diag({1.0, 2.0});
  EXPECT_TRUE(schur_complement_psd(m11, ComplexMatrix::Zero(2, 2), diag({0.0, 0.0})));
  // m22 = diag(1, 0) cannot absorb a column outside its range.
  ComplexMatrix m12 = ComplexMatrix::Zero(2, 2);
  m12(0, 1) = 0.1;
  EXPECT_FALSE(schur_complement_psd(m11, m12, diag({1.0, 0.0})));
  // Rank-one 4 x 4 example, singular blocks.
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(0, 1) = 1.0;
  EXPECT_TRUE(schur_complement_psd(diag({1.0, 0.0}), b, diag({0.0, 1.0})));
  EXPECT_THROW(schur_complement_psd(m11, ComplexMatrix::Zero(3, 2), m11), InputError);
}

TEST(Scalars, DetTraceNorm) {
  EXPECT_NEAR(det(real2(2, 0, 0, 3)).real(), 6.0, 1e-15);
  EXPECT_NEAR(trace(ComplexMatrix::Identity(3, 3)).real(), 3.0, 0.0);
  ComplexMatrix a = real2(1.7, 1.3, 1.3, 1.0);
  ComplexMatrix b = real2(2.2, -1.5, -1.5, 1.1);
  EXPECT_NEAR(spectral_norm(a * b), 2.6515, 1e-4);
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix x = gaussian_matrix(rng, 4, 4, false);
    ASSERT_NEAR(std::abs(det(x) - oracle::laplace_det(x)), 0.0, 1e-12 * std::max(1.0, std::abs(det(x))));
  }
}

TEST(Digest, StableAndSensitive) {
  const ComplexMatrix a = real2(1, 2, 3, 4);
  ComplexMatrix b = a;
  EXPECT_EQ(digest(a), digest(b));
  b(1, 1) = 4.0000000001;
  EXPECT_NE(digest(a), digest(b));
}
