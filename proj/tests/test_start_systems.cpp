#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"

using namespace certhom;
using certhom::testing::moments;

TEST(TotalDegreeStart, RootsOfQuadrics) {
  const StartSet set = total_degree_start(DegreeVector{2, 2}, Complex(1.0));
  ASSERT_EQ(set.roots.size(), 4u);
  const double s = 1.0 / std::sqrt(3.0);
  CVector first(3), second(3);
  first << s, s, s;
  second << s, s, -s;
  EXPECT_LE((set.roots[0].coords() - first).norm(), 1e-15);
  EXPECT_LE((set.roots[1].coords() - second).norm(), 1e-15);
  for (const auto& root : set.roots) EXPECT_LE(evaluate(set.g, root.coords()).norm(), 1e-13);
  EXPECT_NEAR(bw_norm(set.g.system()), 1.0, 1e-14);
}

TEST(TotalDegreeStart, LinearAndCubic) {
  const StartSet line = total_degree_start(DegreeVector{1}, Complex(0.0, 1.0));
  ASSERT_EQ(line.roots.size(), 1u);
  CVector expected(2);
  expected << 1.0, 1.0;
  EXPECT_LE(riemann_distance(line.roots[0].coords(), expected), 1e-15);

  Rng rng(71);
  const StartSet mixed = total_degree_start(DegreeVector{3, 1, 2}, rng);
  ASSERT_EQ(mixed.roots.size(), 6u);
  for (std::size_t a = 0; a < mixed.roots.size(); ++a) {
    EXPECT_LE(evaluate(mixed.g, mixed.roots[a].coords()).norm(), 1e-13);
    for (std::size_t b = a + 1; b < mixed.roots.size(); ++b) {
      EXPECT_GT(riemann_distance(mixed.roots[a], mixed.roots[b]), 0.1);
    }
  }
}

TEST(GoodPair, VanishesAtE0) {
  for (const DegreeVector& d : {DegreeVector{2, 2}, DegreeVector{4, 1, 3}}) {
    const InitialPair pair = good_initial_pair(d);
    EXPECT_EQ(pair.kind, PairKind::GoodPair);
    EXPECT_NEAR(bw_norm(pair.g.system()), 1.0, 1e-14);
    EXPECT_LE(evaluate(pair.g, pair.zeta0.coords()).norm(), 1e-15);
    EXPECT_EQ(pair.zeta0.coords(), ProjectivePoint::basis_vector(d.num_variables(), 0).coords());
  }
}

TEST(RandomSystemOnSphere, UnitNormAndIsotropy) {
  // For f uniform on the unit sphere of C^M, E |<f, u>|^2 = 1/M for every unit u.
  const DegreeVector d{2, 2};
  const double dim = static_cast<double>(d.space_dimension());
  const PolySystem u = good_initial_pair(d).g.system();
  PolySystem monomial{d};
  monomial.coeff(1, {0, 0, 2}) = 1.0;
  Rng rng(72);
  std::vector<double> along_good, along_monomial;
  for (int k = 0; k < 4000; ++k) {
    const SphereSystem f = random_system_on_sphere(d, rng);
    ASSERT_NEAR(bw_norm(f.system()), 1.0, 1e-13);
    along_good.push_back(std::norm(bw_inner(f.system(), u)));
    along_monomial.push_back(std::norm(bw_inner(f.system(), monomial)));
  }
  const auto g = moments(along_good);
  const auto m = moments(along_monomial);
  EXPECT_NEAR(g.mean, 1.0 / dim, 3.0 * g.stderr_of_mean);
  EXPECT_NEAR(m.mean, 1.0 / dim, 3.0 * m.stderr_of_mean);
}

TEST(RandomInitialPair, Contract) {
  Rng rng(73);
  for (const DegreeVector& d : {DegreeVector{2, 2}, DegreeVector{2, 3, 1}, DegreeVector{2, 2, 2, 2}}) {
    for (int trial = 0; trial < 10; ++trial) {
      const RandomPairConstruction c = construct_random_initial_pair(d, rng);
      const CVector& zeta = c.pair.zeta0.coords();
      EXPECT_EQ(c.pair.kind, PairKind::Random);
      EXPECT_NEAR(zeta.norm(), 1.0, 1e-14);
      EXPECT_NEAR(bw_norm(c.pair.g.system()), 1.0, 1e-13);
      EXPECT_LE(evaluate(c.pair.g, zeta).norm(), 1e-13);
      EXPECT_TRUE(std::isfinite(condition_mu(c.pair.g, zeta)));
      EXPECT_LE((c.m * zeta).norm(), 1e-12);
      EXPECT_LT(c.m.squaredNorm(), 1.0);
      EXPECT_TRUE(is_unitary(c.v));
      EXPECT_LE((c.v.adjoint() * zeta - ProjectivePoint::basis_vector(d.num_variables(), 0).coords()).norm(),
                1e-13);
    }
  }
}

TEST(RandomInitialPair, HTildeLiesInRe0) {
  Rng rng(74);
  const DegreeVector d{3, 2, 2};
  const CVector e0 = ProjectivePoint::basis_vector(4, 0).coords();
  for (int trial = 0; trial < 10; ++trial) {
    const RandomPairConstruction c = construct_random_initial_pair(d, rng);
    EXPECT_LE(evaluate(c.h_tilde, e0).norm(), 1e-15);
    EXPECT_LE(jacobian(c.h_tilde, e0).norm(), 1e-15);
    EXPECT_LE(bw_norm(c.h_tilde), 1.0);
    for (int i = 0; i < 3; ++i) {
      const auto& basis = c.h_tilde.basis(i);
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (!in_r_e0_support(basis, k)) EXPECT_EQ(c.h_tilde.coeffs(i)(static_cast<Eigen::Index>(k)), Complex(0.0));
      }
    }
    // h = h_tilde o V^* vanishes to second order at zeta.
    const CVector& zeta = c.pair.zeta0.coords();
    EXPECT_LE(evaluate(c.h, zeta).norm(), 1e-13);
    EXPECT_LE(jacobian(c.h, zeta).norm(), 1e-12);
  }
}

TEST(RandomInitialPair, GHatDerivative) {
  // D g_hat(zeta) = Diag(sqrt d_i) M because M zeta = 0 and <zeta, zeta> = 1.
  Rng rng(75);
  const DegreeVector d{2, 3};
  for (int trial = 0; trial < 10; ++trial) {
    const RandomPairConstruction c = construct_random_initial_pair(d, rng);
    const CVector& zeta = c.pair.zeta0.coords();
    CMatrix expected = c.m;
    for (int i = 0; i < 2; ++i) expected.row(i) *= std::sqrt(static_cast<double>(d[i]));
    EXPECT_LE((jacobian(c.g_hat, zeta) - expected).norm(), 1e-12);
    EXPECT_LE(evaluate(c.g_hat, zeta).norm(), 1e-13);
    const PolySystem scaled = c.g_hat * Complex(1.0 / bw_norm(c.g_hat));
    EXPECT_LE((scaled.coeffs(0) - c.pair.g.system().coeffs(0)).norm(), 1e-13);
  }
}

TEST(RandomInitialPair, FrobeniusMoment) {
  // M is the first n(n+1) coordinates of a uniform point in the unit ball of
  // C^m (m = dim H_(d)), so E |M|_F^2 = n(n+1) / (m + 1).
  const DegreeVector d{2, 2};
  const double m = static_cast<double>(d.space_dimension());
  Rng rng(76);
  std::vector<double> samples;
  for (int k = 0; k < 4000; ++k) samples.push_back(construct_random_initial_pair(d, rng).m.squaredNorm());
  const auto mom = moments(samples);
  EXPECT_NEAR(mom.mean, 6.0 / (m + 1.0), 3.0 * mom.stderr_of_mean);
}

TEST(RandomInitialPair, Deterministic) {
  Rng a(77), b(77);
  const InitialPair p = random_initial_pair(DegreeVector{2, 2}, a);
  const InitialPair q = random_initial_pair(DegreeVector{2, 2}, b);
  EXPECT_EQ(p.zeta0.coords(), q.zeta0.coords());
  EXPECT_EQ(p.g.system().coeffs(1), q.g.system().coeffs(1));
}

TEST(UnitaryPair, TransformsTheGoodPair) {
  Rng rng(78);
  const DegreeVector d{2, 2, 2};
  const CMatrix u = random_unitary(4, rng);
  const InitialPair pair = unitary_transformed_good_pair(d, u);
  EXPECT_EQ(pair.kind, PairKind::RandomUnitary);
  EXPECT_LE((pair.zeta0.coords() - u.col(0)).norm(), 1e-15);
  EXPECT_LE(evaluate(pair.g, pair.zeta0.coords()).norm(), 1e-13);
  EXPECT_NEAR(condition_mu(pair.g, pair.zeta0), std::sqrt(3.0), 1e-10);
  const InitialPair random = random_initial_pair_unitary(d, rng);
  EXPECT_NEAR(bw_norm(random.g.system()), 1.0, 1e-12);
}

TEST(MakeInitialPair, Kinds) {
  Rng rng(79);
  const DegreeVector d{2, 2};
  for (PairKind kind : {PairKind::TotalDegree, PairKind::GoodPair, PairKind::Random, PairKind::RandomUnitary}) {
    const InitialPair pair = make_initial_pair(kind, d, rng);
    EXPECT_EQ(pair.kind, kind);
    EXPECT_LE(evaluate(pair.g, pair.zeta0.coords()).norm(), 1e-13);
  }
  EXPECT_EQ(to_string(PairKind::TotalDegree), "total");
  EXPECT_EQ(to_string(PairKind::RandomUnitary), "unitary");
}

TEST(SolveOne, CertifiedZero) {
  Rng rng(80);
  const SphereSystem f = random_system_on_sphere(DegreeVector{2, 2}, rng);
  for (PairKind kind : {PairKind::Random, PairKind::RandomUnitary, PairKind::GoodPair}) {
    const PathSolution sol = solve_one(f, rng, {}, kind);
    ASSERT_TRUE(sol.ok()) << to_string(kind);
    EXPECT_TRUE(sol.certificate.certified);
    EXPECT_LE(evaluate(f, sol.root.coords()).norm(), 1e-13);
  }
}

TEST(SolveAll, SessionSystem) {
  // x^2 + y^2 - z^2 and xy with (X0, X1, X2) = (z, x, y).
  PolySystem h{DegreeVector{2, 2}};
  h.coeff(0, {0, 2, 0}) = 1.0;
  h.coeff(0, {0, 0, 2}) = 1.0;
  h.coeff(0, {2, 0, 0}) = -1.0;
  h.coeff(1, {0, 1, 1}) = 1.0;
  const SphereSystem f = normalize_to_sphere(h);
  const AllRootsResult all = solve_all_total_degree(f, total_degree_start(f.degrees(), Complex(1.0)));
  ASSERT_EQ(all.paths.size(), 4u);
  EXPECT_TRUE(all.complete);
  EXPECT_TRUE(all.distinct);
  EXPECT_EQ(all.successes(), 4u);

  // The four zeros are (1, +-1, 0) and (1, 0, +-1) over sqrt 2.
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<CVector> expected(4, CVector(3));
  expected[0] << s, s, 0;
  expected[1] << s, -s, 0;
  expected[2] << s, 0, s;
  expected[3] << s, 0, -s;
  for (const CVector& e : expected) {
    bool found = false;
    for (const auto& p : all.paths) found = found || riemann_distance(p.root.coords(), e) < 1e-10;
    EXPECT_TRUE(found);
  }
  for (const auto& p : all.paths) EXPECT_TRUE(p.certificate.certified);
}

TEST(SolveAll, Katsura3) {
  Rng rng(81);
  const AffineSystem f = katsura(3);
  const AllRootsResult all = solve_all_total_degree(f, rng);
  ASSERT_EQ(all.paths.size(), 4u);
  EXPECT_TRUE(all.complete);
  EXPECT_TRUE(all.distinct);
  for (const auto& p : all.paths) {
    const CVector x = projective_to_affine(homogenize(f), p.root);
    EXPECT_LE(evaluate(f, x).norm(), 1e-12);
  }
}
