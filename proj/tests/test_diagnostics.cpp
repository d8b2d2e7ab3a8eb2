#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "urn/diagnostics.hpp"
#include "urn/error.hpp"
#include "urn/fixed_points.hpp"
#include "urn/rational.hpp"

using namespace urn;

namespace {

Counts counts(std::initializer_list<std::int64_t> c) {
  Counts v(static_cast<Index>(c.size()));
  Index i = 0;
  for (auto x : c) v[i++] = x;
  return v;
}

const Distribution half = Distribution::from_counts(counts({1, 1}));

}  // namespace

TEST(Compositions, CountAndEnumeration) {
  EXPECT_EQ(composition_count(2, 2), 3u);
  EXPECT_EQ(composition_count(3, 4), 20u);
  EXPECT_EQ(composition_count(0, 5), 1u);
  std::size_t n = 0;
  for_each_composition(3, 4, [&](const Counts& c) {
    EXPECT_EQ(c.sum(), 3);
    EXPECT_GE(c.minCoeff(), 0);
    ++n;
  });
  EXPECT_EQ(n, 20u);
}

TEST(ExactDrift, Z2FromEvenUrn) {
  // p_1 is (2/3, 1/3) or (1/3, 2/3); either way Z_1 = 2 (1/6)^2 = 1/18 <= 1/9.
  const Snapshot s{0, 2, counts({1, 1})};
  const auto r = exact_conditional_drift(s, convolution_map(cyclic_group(2)), 3, half);
  EXPECT_EQ(r.z, 0.0);
  EXPECT_DOUBLE_EQ(r.expected_next_z, 1.0 / 18.0);
  EXPECT_DOUBLE_EQ(r.xi, 1.0 / 9.0);
  EXPECT_TRUE(r.within_bound);
  EXPECT_TRUE(r.exact);
  EXPECT_DOUBLE_EQ(r.zeta, 1.0 / 18.0);
}

TEST(ExactDrift, AbsorbedStateHasNoDrift) {
  const Snapshot s{4, 6, counts({6, 0})};
  const auto r = exact_conditional_drift(s, convolution_map(cyclic_group(2)), 9, Distribution::point_mass(2, 0));
  EXPECT_EQ(r.drift, 0.0);
  EXPECT_EQ(r.z, 0.0);
}

TEST(ExactDrift, MatchesHandEnumeration) {
  // Z2, counts (3, 1), m = 2: T(p) = (5/8, 3/8). Outcomes (2,0), (1,1), (0,2).
  const Snapshot s{0, 4, counts({3, 1})};
  const auto r = exact_conditional_drift(s, convolution_map(cyclic_group(2)), 6, half);
  const Rational w0(5, 8), w1(3, 8);
  auto z_of = [](Rational a) { return 2 * (a - Rational(1, 2)) * (a - Rational(1, 2)); };
  const Rational expected =
      w0 * w0 * z_of(Rational(5, 6)) + 2 * w0 * w1 * z_of(Rational(4, 6)) + w1 * w1 * z_of(Rational(3, 6));
  EXPECT_DOUBLE_EQ(r.expected_next_z, to_double(expected));
  EXPECT_DOUBLE_EQ(r.z, 0.125);
}

TEST(ExactDrift, AgreesWithMonteCarlo) {
  const auto map = convolution_map(cyclic_group(2));
  const Snapshot s{0, 4, counts({3, 1})};
  const auto exact = exact_conditional_drift(s, map, 6, half);
  const auto mc = monte_carlo_drift(s, map, 6, half, 20000, 99);
  EXPECT_LE(std::abs(mc.drift - exact.drift), 3 * mc.drift_stderr);
  EXPECT_GT(mc.drift_stderr, 0.0);

  // S3 with a batch of 3
  const auto s3 = convolution_map(symmetric_group(3));
  const Snapshot t{0, 5, counts({1, 0, 2, 1, 0, 1})};
  const auto u = Distribution::uniform(6);
  const auto e2 = exact_conditional_drift(t, s3, 8, u);
  const auto m2 = monte_carlo_drift(t, s3, 8, u, 20000, 5);
  EXPECT_LE(std::abs(m2.drift - e2.drift), 3 * m2.drift_stderr);
}

TEST(MonteCarloDrift, Properties) {
  const auto map = convolution_map(cyclic_group(2));
  // absorbed: zero variance
  const auto a = monte_carlo_drift({0, 5, counts({5, 0})}, map, 8, Distribution::point_mass(2, 0), 200, 1);
  EXPECT_EQ(a.drift, 0.0);
  EXPECT_EQ(a.drift_stderr, 0.0);
  // error shrinks like 1 / sqrt(R)
  const Snapshot s{0, 4, counts({3, 1})};
  const auto small = monte_carlo_drift(s, map, 6, half, 1000, 3);
  const auto large = monte_carlo_drift(s, map, 6, half, 16000, 3);
  EXPECT_NEAR(large.drift_stderr / small.drift_stderr, 0.25, 0.05);
  EXPECT_THROW(monte_carlo_drift(s, map, 6, half, 99, 3), Error);
}

TEST(ExactDrift, Errors) {
  const auto map = convolution_map(cyclic_group(8));
  Counts c = Counts::Ones(8);
  try {
    exact_conditional_drift({0, 8, c}, map, 8 + 60, Distribution::uniform(8));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooManyOutcomes);
  }
  EXPECT_THROW(exact_conditional_drift({0, 8, c}, map, 8, Distribution::uniform(8)), Error);
}

TEST(ExactDrift, InequalityOnContractingMaps) {
  // Random states on several contracting maps: drift <= xi exactly.
  oracle::TestRng rng(31);
  const std::vector<SimplexMap> maps{convolution_map(cyclic_group(3)), convolution_map(symmetric_group(3)),
                                     parity_map(3), genotype_map(0.2, 0.3)};
  for (const auto& map : maps) {
    const auto q0 = *find_fixed_points(map).attracting();
    for (int i = 0; i < 40; ++i) {
      Counts c(map.dimension());
      for (Index j = 0; j < c.size(); ++j) c[j] = rng.below(6);
      c[0] += 1;
      const std::int64_t m = 1 + rng.below(4);
      const auto r = exact_conditional_drift({0, c.sum(), c}, map, c.sum() + m, q0);
      EXPECT_TRUE(r.within_bound) << map.descriptor().to_string();
    }
  }
}

TEST(Monitor, Z2Prefix) {
  RunConfig cfg{convolution_map(cyclic_group(2)), GrowthSchedule::unit(2), counts({1, 1}), {50, std::nullopt}, 1, 4};
  const auto t = run(cfg);
  const auto rep = drift_monitor(t, cfg.map, half);
  EXPECT_EQ(rep.records.size(), 50u);
  EXPECT_EQ(rep.violations, 0u);
  EXPECT_EQ(rep.z_series.size(), 51u);
  for (std::size_t i = 1; i < rep.xi_partial.size(); ++i) EXPECT_GT(rep.xi_partial[i], rep.xi_partial[i - 1]);
  EXPECT_DOUBLE_EQ(rep.xi_bound, 0.5);
  EXPECT_LE(rep.sum_xi, rep.xi_bound);
}

TEST(Monitor, XiSumOverLongRun) {
  RunConfig cfg{convolution_map(cyclic_group(2)), GrowthSchedule::unit(2), counts({1, 1}), {10000, std::nullopt},
                1000, 4};
  MonitorOptions o;
  o.window = 0;
  o.log_checkpoints = false;
  const auto rep = drift_monitor(run(cfg), cfg.map, half, o);
  double oracle = 0;
  for (int k = 3; k <= 10002; ++k) oracle += 1.0 / (double(k) * k);
  EXPECT_NEAR(rep.sum_xi, oracle, 1e-12);
  EXPECT_LT(rep.sum_xi, 0.65);
  EXPECT_TRUE(rep.records.empty());
}

TEST(Monitor, LogCheckpointsAndBoundarySeries) {
  RunConfig cfg{convolution_map(cyclic_group(2)), GrowthSchedule::unit(2), counts({1, 1}), {300, std::nullopt}, 1, 4};
  MonitorOptions o;
  o.window = 10;
  o.boundary.push_back(Eigen::Vector2d(0.0, 1.0));
  const auto rep = drift_monitor(run(cfg), cfg.map, half, o);
  std::vector<std::int64_t> ns;
  for (const auto& r : rep.records) ns.push_back(r.n);
  EXPECT_EQ(ns, (std::vector<std::int64_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 16, 32, 64, 128, 256}));
  ASSERT_EQ(rep.boundary_series.size(), 1u);
  EXPECT_EQ(rep.boundary_series[0].values.size(), 301u);
  EXPECT_DOUBLE_EQ(rep.boundary_series[0].values[0].second, 2.0);
}

TEST(Monitor, IdentityMapStillSatisfiesInequality) {
  const auto map = genotype_map(0.0, 0.0);
  RunConfig cfg{map, GrowthSchedule::unit(5), counts({2, 3}), {100, std::nullopt}, 1, 8};
  const auto q0 = Distribution::from_weights(Eigen::Vector2d(0.3, 0.7));
  EXPECT_EQ(drift_monitor(run(cfg), map, q0).violations, 0u);
}

TEST(Verdict, Cases) {
  RunConfig cfg{convolution_map(cyclic_group(2)), GrowthSchedule::unit(2), counts({1, 1}), {20, std::nullopt}, 1, 4};
  cfg.initial = counts({2, 0});
  const auto absorbed = run(cfg);
  const auto v = convergence_verdict(absorbed, half);
  EXPECT_FALSE(v.converged);
  EXPECT_DOUBLE_EQ(v.final_distance, std::sqrt(0.5));
  EXPECT_DOUBLE_EQ(v.final_tv, 0.5);

  cfg.initial = counts({1, 1});
  const auto t = run(cfg);
  const auto self = convergence_verdict(t, t.terminal().empirical(), 0.0, 1);
  EXPECT_TRUE(self.converged);
  EXPECT_THROW(convergence_verdict(t, half, 0.02, 100), Error);
}

TEST(ExactLaw, SmallCases) {
  const auto map = convolution_map(cyclic_group(2));
  const Snapshot s{0, 2, counts({1, 1})};
  const auto zero = exact_distribution(s, map, GrowthSchedule::unit(2), 0);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero[0].probability, 1.0);

  const auto one = exact_distribution<Rational>(s, map, GrowthSchedule::unit(2), 1);
  ASSERT_EQ(one.size(), 2u);
  EXPECT_EQ(one[0].counts, counts({1, 2}));
  EXPECT_EQ(one[0].probability, Rational(1, 2));
  EXPECT_EQ(one[1].probability, Rational(1, 2));

  const auto three = exact_distribution<Rational>(s, map, GrowthSchedule::unit(2), 3);
  EXPECT_EQ(three.size(), 4u);
  Rational total(0);
  for (const auto& lp : three) total += lp.probability;
  EXPECT_EQ(total, Rational(1));
}

TEST(ExactLaw, SumsToOneAndCaps) {
  const auto map = convolution_map(symmetric_group(3));
  const Snapshot s{0, 2, counts({0, 0, 1, 1, 0, 0})};
  const auto law = exact_distribution(s, map, GrowthSchedule::geometric(2, 1.5), 3);
  double total = 0;
  for (const auto& lp : law) total += lp.probability;
  EXPECT_NEAR(total, 1.0, 1e-12);
  try {
    exact_distribution(s, map, GrowthSchedule::geometric(2, 3.0), 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooManyOutcomes);
  }
}

TEST(ExactLaw, EngineAgreement) {
  RunConfig cfg{convolution_map(cyclic_group(3)), GrowthSchedule::geometric(2, 1.5), counts({1, 1, 0}),
                {3, std::nullopt}, 1, 0};
  const auto law = exact_distribution(Snapshot{0, 2, cfg.initial}, cfg.map, cfg.schedule, 3);
  const auto cmp = compare_law_with_engine(law, cfg, 3, 20000, 17);
  EXPECT_TRUE(cmp.pass);
  EXPECT_EQ(cmp.outside_support, 0u);
}

TEST(DeriveSeed, Spreads) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}
