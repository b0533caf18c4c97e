#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "covercraft/error.hpp"
#include "covercraft/models.hpp"
#include "covercraft/stable_lattice.hpp"
#include "oracles.hpp"

using namespace covercraft;

namespace {

double l1(const RealVec& v) {
  double s = 0;
  for (double x : v) s += std::fabs(x);
  return s;
}

double linf(const RealVec& v) {
  double s = 0;
  for (double x : v) s = std::max(s, std::fabs(x));
  return s;
}

double l2(const RealVec& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// alpha^T alpha, which is independent of the rotation ambiguity of alpha.
std::vector<RealVec> gram(const JohnTransform& jt) {
  const std::size_t n = jt.n;
  std::vector<RealVec> g(n, RealVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) g[i][j] += jt.alpha[k][i] * jt.alpha[k][j];
  return g;
}

RealVec random_direction(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d(0, 1);
  RealVec v(n);
  for (auto& x : v) x = d(rng);
  const double len = l2(v);
  for (auto& x : v) x /= len;
  return v;
}

}  // namespace

TEST(StableNorm, GridExamples) {
  const auto m = models::grid();
  auto e = stable_norm_estimate(m.action, m.basepoint, {1, 0}, 8);
  EXPECT_EQ(e.upper, 1);
  EXPECT_EQ(e.gap, 0);
  e = stable_norm_estimate(m.action, m.basepoint, {1, 1}, 8);
  EXPECT_EQ(e.upper, 2);
  EXPECT_EQ(e.gap, 0);
  e = stable_norm_estimate(m.action, m.basepoint, {0, 0}, 8);
  EXPECT_EQ(e.upper, 0);
  EXPECT_EQ(e.gap, 0);
  EXPECT_THROW(stable_norm_estimate(m.action, m.basepoint, {1, 0}, 0), Error);
}

TEST(StableNorm, GridIsL1ForAllK) {
  const auto m = models::grid();
  for (const auto& g : oracle::l1_ball(2, 4))
    for (std::size_t K = 1; K <= 12; ++K) {
      const auto e = stable_norm_estimate(m.action, m.basepoint, g, K);
      EXPECT_EQ(e.upper, oracle::l1(g));
      EXPECT_EQ(e.gap, 0);
    }
}

TEST(StableNorm, AntitoneAlongDoubling) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> d(-4, 4);
  std::uniform_int_distribution<std::size_t> k(1, 16);
  for (const auto& m : {models::honeycomb(), models::weighted_grid(), models::cylinder_completion(5)}) {
    for (int t = 0; t < 100; ++t) {
      IntVec g(m.action.rank());
      for (auto& x : g) x = d(rng);
      const std::size_t K = k(rng);
      const auto a = stable_norm_estimate(m.action, m.basepoint, g, K);
      const auto b = stable_norm_estimate(m.action, m.basepoint, g, 2 * K);
      EXPECT_LE(b.upper, a.upper) << m.name << " " << to_string(g) << " K=" << K;
      EXPECT_GE(b.upper, 0);
      if (K >= 2) {
        const auto h = stable_norm_estimate(m.action, m.basepoint, g, K / 2);
        EXPECT_EQ(a.gap, abs(a.upper - h.upper));
      }
    }
  }
}

TEST(NormModel, AxiomsOnSamples) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-6, 6);
  std::vector<NormModel> norms{NormModel::analytic(NormKind::kL1, 2), NormModel::analytic(NormKind::kL2, 2),
                               NormModel::analytic(NormKind::kLinf, 3)};
  const auto hc = models::honeycomb();
  norms.push_back(NormModel::estimated(hc.action, hc.basepoint, 8));
  const auto g = models::grid();
  norms.push_back(NormModel::estimated(g.action, g.basepoint, 8));
  for (const auto& nm : norms) {
    const double tol = nm.source() == "analytic" ? 0.0 : 1e-9;
    for (int t = 0; t < 200; ++t) {
      RealVec u(nm.n()), v(nm.n()), w(nm.n());
      for (auto& x : u) x = d(rng);
      for (auto& x : v) x = d(rng);
      for (std::size_t i = 0; i < nm.n(); ++i) w[i] = u[i] + v[i];
      EXPECT_LE(nm(w), nm(u) + nm(v) + tol + 1e-12);
      RealVec s = u;
      for (auto& x : s) x *= 3;
      EXPECT_NEAR(nm(s), 3 * nm(u), tol + 1e-12 * nm(u));
      s = u;
      for (auto& x : s) x = -x / 2;
      EXPECT_NEAR(nm(s), nm(u) / 2, tol + 1e-12 * nm(u));
    }
  }
}

TEST(NormModel, GridEstimateIsL1AndComparisonConstantIsZero) {
  const auto g = models::grid();
  const auto nm = NormModel::estimated(g.action, g.basepoint, 8);
  EXPECT_EQ(nm.facets().size(), 4u);
  for (const auto& v : oracle::l1_ball(2, 5)) EXPECT_NEAR(nm(v), static_cast<double>(oracle::l1(v)), 1e-12);
  EXPECT_EQ(empirical_comparison_constant(nm, g.action, g.basepoint, 4), 0);
  const auto hc = models::honeycomb();
  const auto hn = NormModel::estimated(hc.action, hc.basepoint, 8);
  EXPECT_EQ(hn.facets().size(), 6u);
  const Rational C = empirical_comparison_constant(hn, hc.action, hc.basepoint, 4);
  EXPECT_GE(C, 0);
  EXPECT_EQ(Rational(C * 1024).get_den(), 1);
  // The constant dominates every sampled discrepancy.
  for (const auto& v : oracle::l1_ball(2, 4))
    EXPECT_LE(std::fabs(to_double(displacement(hc.action, v, hc.basepoint)) - hn(v)), to_double(C) + 1e-12);
}

TEST(John, L2IsIdentity) {
  const auto jt = john_transform(NormModel::analytic(NormKind::kL2, 2), 256, 1e-6, 0);
  const auto G = gram(jt);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(G[i][j], i == j ? 1.0 : 0.0, 1e-4);
}

TEST(John, L1IsScaledIdentity) {
  const auto jt = john_transform(NormModel::analytic(NormKind::kL1, 2), 256, 1e-6, 0);
  const auto G = gram(jt);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(G[i][j], i == j ? 0.5 : 0.0, 1e-4);
}

TEST(John, LinfIsIdentity) {
  const auto jt = john_transform(NormModel::analytic(NormKind::kLinf, 2), 256, 1e-6, 0);
  const auto G = gram(jt);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(G[i][j], i == j ? 1.0 : 0.0, 1e-4);
}

TEST(John, FreshSandwichByHand) {
  const double tol = 1e-6;
  for (auto kind : {NormKind::kL1, NormKind::kLinf}) {
    const auto nm = NormModel::analytic(kind, 2);
    const auto jt = john_transform(nm, 256, tol, 3);
    std::mt19937_64 rng(777);
    for (int t = 0; t < 10000; ++t) {
      const RealVec v = random_direction(rng, 2);
      const RealVec av = jt.apply(v);
      const double n = kind == NormKind::kL1 ? l1(av) : linf(av);
      EXPECT_GE(n, 1.0 / std::sqrt(2.0) - 2 * tol);
      EXPECT_LE(n, 1.0 + 2 * tol);
    }
    const auto fresh = certify_sandwich(jt, nm, 10000, tol, 99);
    EXPECT_TRUE(fresh.passed);
    EXPECT_EQ(fresh.samples, 10000u);
  }
}

TEST(John, RankThreeAndInverse) {
  const auto nm = NormModel::analytic(NormKind::kL1, 3);
  const auto jt = john_transform(nm, 512, 1e-6, 1);
  EXPECT_TRUE(certify_sandwich(jt, nm, 2000, 1e-6, 4).passed);
  const RealVec v{0.3, -1.2, 2.0};
  const RealVec back = jt.apply_inverse(jt.apply(v));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(back[i], v[i], 1e-9);
  EXPECT_THROW(john_transform(NormModel::analytic(NormKind::kL1, 4), 16, 1e-6, 1), Error);
}

TEST(CsConstants, ClosedForms) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const Rational& D : {Rational(1), Rational(5, 2)})
      for (const Rational& C : {Rational(0), Rational(1, 3)}) {
        const Rational nn(static_cast<long>(n));
        const Rational M = 2 * nn * nn * nn * (2 * D + C);
        EXPECT_EQ(cs_M(n, D, C), M);
        EXPECT_EQ(cs_D_prime(n, D, C), 2 * M * nn + 2 * (nn * nn + 1) * (2 * D + C));
      }
  EXPECT_EQ(cs_M(1, 1, 0), 4);
  EXPECT_EQ(cs_D_prime(1, 1, 0), 16);
}

TEST(CsSublattice, RankOne) {
  const auto nm = NormModel::analytic(NormKind::kL1, 1);
  const auto jt = john_transform(nm, 16, 1e-6, 0);
  const auto cert = cs_sublattice(nm, jt, Rational(1));
  EXPECT_EQ(cert.M, 4);
  EXPECT_EQ(cert.D_prime, 16);
  ASSERT_EQ(cert.basis.size(), 1u);
  EXPECT_EQ(std::llabs(cert.basis[0][0]), std::llround(std::fabs(cert.targets[0][0])));
}

TEST(CsSublattice, GridL1) {
  const auto g = models::grid();
  const auto nm = NormModel::analytic(NormKind::kL1, 2);
  const auto jt = john_transform(nm, 256, 1e-6, 0);
  auto cert = cs_sublattice(nm, jt, Rational(1));
  EXPECT_EQ(cert.M, 32);
  EXPECT_EQ(cert.D_prime, 148);
  EXPECT_EQ(cert.rounding_bound, 4);
  ASSERT_EQ(cert.basis.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    RealVec diff{cert.basis[i][0] - cert.targets[i][0], cert.basis[i][1] - cert.targets[i][1]};
    EXPECT_NEAR(cert.rounding_errors[i], l1(diff), 1e-9);
    EXPECT_LE(l1(diff), 4.0);
    // The target has Euclidean length M after alpha^-1.
    EXPECT_NEAR(l2(jt.apply_inverse(cert.targets[i])), 32.0, 1e-6);
  }
  EXPECT_TRUE(cert.independent);
  EXPECT_TRUE(cert.box_separation);
  EXPECT_TRUE(cert.box_norm_separation);
  EXPECT_TRUE(cert.analytic_separation);
  // Every nonzero coefficient vector in the box gives displacement >= D.
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) {
      if (a == 0 && b == 0) continue;
      IntVec gv{a * cert.basis[0][0] + b * cert.basis[1][0], a * cert.basis[0][1] + b * cert.basis[1][1]};
      EXPECT_GE(oracle::l1(gv), 1);
    }
  check_on_action(cert, g.action, g.basepoint);
  ASSERT_TRUE(cert.quotient_diameter.has_value());
  EXPECT_TRUE(*cert.diameter_bound);
  EXPECT_LE(*cert.quotient_diameter, 148);
  // Brute force: the grid is vertex transitive, so the diameter is the largest
  // distance from a class to the class of p.
  std::int64_t diam = 0;
  const auto& b = cert.basis;
  for (std::int64_t x = -30; x <= 30; ++x)
    for (std::int64_t y = -30; y <= 30; ++y) {
      std::int64_t best = 1 << 30;
      for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j)
          best = std::min<std::int64_t>(best, oracle::l1({x - i * b[0][0] - j * b[1][0], y - i * b[0][1] - j * b[1][1]}));
      diam = std::max(diam, best);
    }
  EXPECT_EQ(*cert.quotient_diameter, diam);
}

TEST(CsSublattice, EstimatedGridNormMatchesAnalytic) {
  const auto g = models::grid();
  const auto est = NormModel::estimated(g.action, g.basepoint, 8);
  const auto ana = NormModel::analytic(NormKind::kL1, 2);
  const auto c1 = cs_sublattice(est, john_transform(est, 256, 1e-6, 0), Rational(1));
  const auto c2 = cs_sublattice(ana, john_transform(ana, 256, 1e-6, 0), Rational(1));
  EXPECT_EQ(c1.M, c2.M);
  EXPECT_EQ(c1.D_prime, c2.D_prime);
  EXPECT_EQ(Lattice(2, c1.basis).index(), Lattice(2, c2.basis).index());
}

TEST(CsSublattice, HoneycombEmpiricalConstant) {
  const auto hc = models::honeycomb();
  auto nm = NormModel::estimated(hc.action, hc.basepoint, 8);
  nm.set_C(empirical_comparison_constant(nm, hc.action, hc.basepoint, 4), true);
  const auto jt = john_transform(nm, 256, 1e-6, 0);
  auto cert = cs_sublattice(nm, jt, Rational(1));
  for (double e : cert.rounding_errors) EXPECT_LE(e, to_double(cert.rounding_bound) + 1e-9);
  check_on_action(cert, hc.action, hc.basepoint);
  EXPECT_TRUE(*cert.box_displacement_separation);
  EXPECT_TRUE(*cert.diameter_bound);
}

TEST(AsymptoticVolume, Grid) {
  const auto g = models::grid();
  const auto big = asymptotic_volume_estimate(g.action, g.basepoint, Rational(100));
  EXPECT_EQ(big.count, static_cast<std::size_t>(2 * 99 * 99 + 2 * 99 + 1));
  EXPECT_GE(big.estimate, 1.9);
  EXPECT_LE(big.estimate, 2.1);
  const auto two = asymptotic_volume_estimate(g.action, g.basepoint, Rational(2));
  EXPECT_EQ(two.count, 5u);
  EXPECT_DOUBLE_EQ(two.estimate, 5.0 / 4.0);
  const auto tiny = asymptotic_volume_estimate(g.action, g.basepoint, Rational(1, 2));
  EXPECT_EQ(tiny.count, 1u);
  EXPECT_DOUBLE_EQ(tiny.estimate, 4.0);
}
