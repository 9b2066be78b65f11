#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "alcove/cone_geometry.hpp"
#include "alcove/rng.hpp"
#include "alcove/stats.hpp"

using namespace alcove;

namespace {

constexpr double kPi = std::numbers::pi;

auto unit = [] { return 1.0; };

StringVector affine_strings(std::vector<double> xs) { return StringVector{std::move(xs), StringKind::affine, 0}; }

// Strings and corrected endpoint of a sampled path, from the transform route.
// The Levy step of the corrected limit carries half of xi_{n+1}, so sigma needs
// the strings through xi_{n+1} for lambda - sigma to be the path endpoint.
struct BrownianStrings {
  StringVector xs;
  WeightPoint lambda;
};
BrownianStrings brownian_strings(double mu, Grid g, int n, std::uint64_t seed) {
  const Path p = sample_brownian(mu, g, seed);
  const TransformTrace tr = iterate(p, n + 1, Wall::zero);
  const Path c = corrected_limit(p, n, Wall::zero);
  return {affine_strings(tr.xi), {g.horizon(), c.terminal()}};
}

}  // namespace

TEST(AffineRoots, CartanMatrix) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      EXPECT_DOUBLE_EQ(dot(affine::coalpha(i), affine::alpha(j)), i == j ? 2.0 : -2.0);
}

TEST(VermaSampler, UnitStubTelescopes) {
  const StringVector s = verma_sample_affine(0.5, 8, 200, unit);
  EXPECT_NEAR(s.xs[0], 1.0, 1e-15);
  for (int k = 1; k <= 8; ++k) EXPECT_NEAR(s.xs[k], 2.0, 1e-12);
}

TEST(VermaSampler, UnitStubGivesExactMeans) {
  for (double mu : {0.2, 0.3, 0.7}) {
    const AffineVermaSampler smp(mu, 6, 50);
    const StringVector s = smp(unit);
    EXPECT_NEAR(s.xs[0], 1.0 / (2.0 * (1.0 - mu)), 1e-15);
    for (int k = 1; k <= 6; ++k) {
      EXPECT_NEAR(s.xs[k], verma_mean_affine(mu, k), 1e-12);
      EXPECT_NEAR(smp.mean(k), verma_mean_affine(mu, k), 1e-12);
    }
  }
}

TEST(VermaSampler, RejectsBoundaryDrift) {
  EXPECT_THROW(AffineVermaSampler(0.0, 3, 10), std::domain_error);
  EXPECT_THROW(AffineVermaSampler(1.0, 3, 10), std::domain_error);
  EXPECT_THROW(AffineVermaSampler(0.5, 3, 3), std::invalid_argument);
  EXPECT_THROW(VermaWeightSampler(1.2, 10), std::domain_error);
}

TEST(VermaSampler, SeriesTailAgainstDirectSum) {
  for (double mu : {0.3, 0.5, 0.8}) {
    double direct = 0.0;
    for (long n = 101; n <= 2000000; ++n) direct += 2.0 / (n * (n + 1.0) + (1.0 - 2.0 * mu) * verma_nu(n));
    EXPECT_NEAR(verma_series_tail(mu, 100), direct, 2e-6);
  }
}

TEST(VermaSampler, MeanOfXi0WithinThreeSE) {
  Engine eng = substream(21, 0);
  UnitExponential e(eng);
  const AffineVermaSampler smp(0.3, 2, 500);
  std::vector<double> x0;
  for (int i = 0; i < 20000; ++i) x0.push_back(smp(e).xs[0]);
  const MeanEstimate m = mean_estimate(x0);
  EXPECT_LE(std::abs(m.mean - 1.0 / 1.4), 3.0 * m.se);
}

TEST(VermaSampler, MeansApproachTwoLikeOneOverKSquared) {
  EXPECT_LE(std::abs(verma_mean_affine(0.3, 50) - 2.0), 0.02);
  // k sum_{n>=k} 2/(n(n+1)) is exactly 2; what is left alternates with O(n^-3) terms,
  // so (m_k - 2) k^2 settles (even k) and (4 m_{2k} - m_k)/3 gains accuracy.
  for (int k : {10, 20, 40}) {
    const double a = verma_mean_affine(0.3, k), b = verma_mean_affine(0.3, 2 * k);
    EXPECT_LT(std::abs((4.0 * b - a) / 3.0 - 2.0), std::abs(b - 2.0));
  }
  const double c1 = 1600 * (verma_mean_affine(0.3, 40) - 2.0), c2 = 6400 * (verma_mean_affine(0.3, 80) - 2.0);
  EXPECT_NEAR(c1, c2, 0.05 * std::abs(c2) + 1e-3);
}

TEST(VermaSampler, OutputsAreInGamma) {
  Engine eng = substream(5, 0);
  UnitExponential e(eng);
  const AffineVermaSampler smp(0.4, 30, 300);
  for (int i = 0; i < 2000; ++i) ASSERT_TRUE(in_gamma(smp(e)));
}

TEST(WeightSampler, UnitStubGivesPiCot) {
  // With unit exponentials the paired series is its own mean.
  EXPECT_NEAR(verma_weight_sample(0.25, 5000, unit), kPi, 1e-9);
  EXPECT_NEAR(verma_weight_sample(0.5, 10, unit), 0.0, 1e-15);
  EXPECT_NEAR(verma_weight_sample(0.3, 5000, unit), kPi / std::tan(0.3 * kPi), 1e-9);
}

TEST(WeightSampler, HalfDriftLaw) {
  Engine eng = substream(77, 0);
  UnitExponential e(eng);
  const VermaWeightSampler smp(0.5, 1000);
  std::vector<double> d(20000);
  for (auto& x : d) x = smp(e);
  // Density 1/(2 pi cosh(x/2)).
  const double ks = ks_statistic(d, [](double x) { return 2.0 / kPi * std::atan(std::exp(x / 2.0)); });
  EXPECT_LE(ks, 0.015);
  EXPECT_LE(std::abs(mean_estimate(d).mean), 4.0 * mean_estimate(d).se);
}

TEST(PartialWeight, Examples) {
  EXPECT_EQ(partial_weight(affine_strings({0, 0, 0}), 2), (Vec2{0, 0}));
  EXPECT_EQ(partial_weight(affine_strings({1, 2}), 1), (Vec2{0, 0}));
  // Unit stub at mu = 1/2: xi = (1, 2, 2, ...), even partial weights vanish.
  std::vector<double> xs(21, 2.0);
  xs[0] = 1.0;
  for (int p = 1; p <= 10; ++p) EXPECT_NEAR(partial_weight(affine_strings(xs), 2 * p).x, 0.0, 1e-12);
  EXPECT_THROW(partial_weight(affine_strings({1}), 3), std::out_of_range);
}

TEST(PartialWeight, MartingaleMeanIsPiCot) {
  Engine eng = substream(8, 0);
  UnitExponential e(eng);
  const double mu = 0.3;
  const AffineVermaSampler smp(mu, 40, 2000);
  std::vector<double> w;
  for (int i = 0; i < 20000; ++i) w.push_back(partial_weight(smp(e), 40).x);
  const MeanEstimate m = mean_estimate(w);
  // Truncation at K = 40 leaves a deterministic offset of order 1/K in the x-coordinate.
  EXPECT_LE(std::abs(m.mean - kPi / std::tan(kPi * mu)), 4.0 * m.se + 0.1);
}

TEST(InGamma, Examples) {
  EXPECT_TRUE(in_gamma(affine_strings({1, 2, 2})));
  EXPECT_FALSE(in_gamma(affine_strings({0, 1, 3})));
  EXPECT_FALSE(in_gamma(affine_strings({-0.1, 0})));
  EXPECT_TRUE(in_gamma(affine_strings({})));
  std::vector<double> xs(21, 2.0);
  xs[0] = 1.0;
  EXPECT_TRUE(in_gamma(affine_strings(xs), 1e-9));
  xs[20] = 1.0;  // breaks sigma convergence at the last even index
  EXPECT_FALSE(in_gamma(affine_strings(xs), 1e-9));
}

TEST(InGammaLambda, Examples) {
  const WeightPoint lambda{1.0, 0.4};
  EXPECT_TRUE(in_gamma_lambda(affine_strings({0, 0, 0}), lambda, 2));
  EXPECT_FALSE(in_gamma_lambda(affine_strings({1.0 - 0.4 + 1.0, 0, 0}), lambda, 2));
  EXPECT_TRUE(in_gamma_lambda(affine_strings({1.0 - 0.4 - 0.01, 0, 0}), lambda, 2));
}

TEST(InGammaLambda, BrownianStringsAreMembersAndHalfIsBinding) {
  const Grid g(2e-4, 5000);
  int half = 0, zero = 0, one = 0, n = 400;
  for (int i = 0; i < n; ++i) {
    const auto b = brownian_strings(0.5, g, 10, 1000 + i);
    half += in_gamma_lambda(b.xs, b.lambda, 10, 0.5, 1e-9);
    zero += in_gamma_lambda(b.xs, b.lambda, 10, 0.0, 1e-9);
    one += in_gamma_lambda(b.xs, b.lambda, 10, 1.0, 1e-9);
  }
  EXPECT_GE(half, 0.99 * n);
  // coalpha_k(alpha_k) = 2, so a larger coefficient only relaxes each inequality.
  EXPECT_LT(zero, half);
  EXPECT_GE(one, half);
}

TEST(Dihedral, CartanMatrixAndPositiveA) {
  for (int m : {2, 3, 6, 64}) {
    const DihedralConfig cfg(m);
    EXPECT_NEAR(cfg.coroot(0, cfg.v(0)), 2.0, 1e-14);
    EXPECT_NEAR(cfg.coroot(1, cfg.v(1)), 2.0, 1e-14);
    EXPECT_NEAR(cfg.coroot(0, cfg.v(1)), -2.0 * std::cos(kPi / m), 1e-14);
    EXPECT_NEAR(cfg.coroot(1, cfg.v(0)), -2.0 * std::cos(kPi / m), 1e-14);
    for (int k = 1; k < m; ++k) EXPECT_GT(cfg.a(k), 0.0);
  }
  EXPECT_THROW(DihedralConfig(1), std::invalid_argument);
}

TEST(Dihedral, TauMapLimits) {
  EXPECT_EQ(tau_map(6, {6.0 / kPi, 0.3}).x, 0.3);
  EXPECT_NEAR(tau_map(6, {6.0 / kPi, 0.3}).t, 1.0, 1e-15);
  std::vector<double> err;
  for (int m : {8, 16, 32}) {
    const DihedralConfig cfg(m);
    EXPECT_EQ(tau_map(m, cfg.v(1)), affine::alpha1);
    const Vec2 d = tau_map(m, cfg.v(0)) - affine::alpha0;
    err.push_back(std::hypot(d.t, d.x));
  }
  // Second order: halving 1/m divides the error by about 4.
  EXPECT_NEAR(err[0] / err[1], 4.0, 0.1);
  EXPECT_NEAR(err[1] / err[2], 4.0, 0.05);
}

TEST(Dihedral, PitmanFixesCone) {
  const DihedralConfig cfg(6);
  const Grid g(0.01, 100);
  const Vec2 gamma{6.0 / kPi, 0.5};
  const PlanarPath p(Path::from_function(g, [&](double s) { return gamma.t * s; }),
                     Path::from_function(g, [&](double s) { return gamma.x * s; }));
  for (int i = 0; i < 2; ++i) {
    const PlanarPath q = dihedral_pitman(p, cfg, i);
    for (std::size_t j = 0; j < g.nodes(); ++j) EXPECT_EQ(q.at(j), p.at(j));
  }
  const DihedralStrings ds = dihedral_strings(p, cfg);
  for (double x : ds.xs.xs) EXPECT_EQ(x, 0.0);
}

TEST(Dihedral, SecondGeneratorMatchesAffineP1) {
  const DihedralConfig cfg(5);
  const Grid g(1e-3, 1000);
  const Path a = sample_brownian(0.2, g, 3), b = sample_brownian(-0.1, g, 4);
  const PlanarPath q = dihedral_pitman(PlanarPath(a, b), cfg, 1);
  const Path want = pitman(b, Wall::one);
  for (std::size_t j = 0; j < g.nodes(); ++j) {
    EXPECT_EQ(q.first[j], a[j]);
    EXPECT_NEAR(q.second[j], want[j], 1e-12);
  }
}

TEST(Dihedral, StringsReconstructAndLandInCone) {
  for (int m : {3, 6, 7}) {
    const DihedralConfig cfg(m);
    for (unsigned seed = 1; seed <= 5; ++seed) {
      const Grid g(1e-3, 2000);
      const PlanarPath p(sample_brownian(0.3, g, seed), sample_brownian(0.2, g, seed + 100));
      const DihedralStrings ds = dihedral_strings(p, cfg);
      ASSERT_EQ(ds.xs.xs.size(), static_cast<std::size_t>(m));
      Vec2 end = p.at(g.count());
      for (int k = 0; k < m; ++k) {
        EXPECT_GE(ds.xs.xs[k], 0.0);
        end = end + ds.xs.xs[k] * cfg.v(k);
      }
      const Vec2 got = ds.final_path.at(g.count());
      EXPECT_NEAR(got.t, end.t, 1e-12);
      EXPECT_NEAR(got.x, end.x, 1e-12);
      for (std::size_t j = 0; j < g.nodes(); ++j) ASSERT_TRUE(cfg.in_closed_cone(ds.final_path.at(j), 1e-9));
      // Idempotence of each generator.
      for (int i = 0; i < 2; ++i) {
        const PlanarPath once = dihedral_pitman(p, cfg, i), twice = dihedral_pitman(once, cfg, i);
        for (std::size_t j = 0; j < g.nodes(); ++j) ASSERT_EQ(once.at(j), twice.at(j));
      }
    }
  }
}

TEST(Dihedral, VermaUnitStub) {
  const int m = 6;
  const DihedralConfig cfg(m);
  const Vec2 gamma{m / kPi, 0.5};
  const StringVector s = dihedral_verma_sample(cfg, gamma, unit);
  EXPECT_NEAR(s.xs[0], 1.0 / cfg.rate(0, gamma), 1e-15);
  double denom = 0.0;
  for (int l = 1; l < m; ++l) denom += cfg.rate(l, gamma) * cfg.a(l);
  EXPECT_NEAR(s.xs[m - 1], cfg.a(m - 1) / denom, 1e-15);
  EXPECT_TRUE(in_gamma(s));
  EXPECT_THROW(DihedralVermaSampler(cfg, Vec2{0.0, -1.0}), std::domain_error);
}
