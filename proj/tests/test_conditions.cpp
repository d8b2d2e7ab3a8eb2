#include <gtest/gtest.h>

#include "oracles.hpp"
#include "urn/conditions.hpp"
#include "urn/error.hpp"

using namespace urn;

namespace {

double param(const ConditionReport& r, const std::string& name) {
  for (const auto& [k, v] : r.parameters)
    if (k == name) return v;
  ADD_FAILURE() << "missing parameter " << name;
  return 0.0;
}

Errc error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return Errc::Io;
}

}  // namespace

TEST(Contraction, ConvolutionPasses) {
  for (const auto& g : {cyclic_group(2), symmetric_group(3), cyclic_group(5)}) {
    const auto m = convolution_map(g);
    const auto r = check_contraction(m, find_fixed_points(m));
    EXPECT_TRUE(r.pass) << g.name();
    EXPECT_LT(r.worst_value, 1.0);
    EXPECT_EQ(r.witness.size(), g.order());
    EXPECT_EQ(r.condition, "contraction");
  }
}

TEST(Contraction, GenotypeInteriorPasses) {
  const auto m = genotype_map(0.2, 0.3);
  EXPECT_TRUE(check_contraction(m, find_fixed_points(m)).pass);
}

TEST(Contraction, IdentityFails) {
  const auto m = genotype_map(0.0, 0.0);
  const auto fps = find_fixed_points(m);
  EXPECT_EQ(error_of([&] { check_contraction(m, fps); }), Errc::NoAttractingPoint);
  ContractionOptions o;
  o.center = Distribution::uniform(2);
  const auto r = check_contraction(m, fps, o);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.worst_value, 1.0, 1e-12);
}

TEST(Contraction, BothNegativeInteriorIsRepelling) {
  const auto m = genotype_map(-0.5, -0.5);
  ContractionOptions o;
  o.center = Distribution::uniform(2);
  const auto r = check_contraction(m, find_fixed_points(m), o);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.worst_value, 1.0);
}

TEST(Contraction, Errors) {
  const auto m = convolution_map(cyclic_group(2));
  const auto fps = find_fixed_points(m);
  ContractionOptions o;
  o.exclusion_radius = 10.0;
  EXPECT_EQ(error_of([&] { check_contraction(m, fps, o); }), Errc::AllSamplesExcluded);
  o = {};
  o.samples = 0;
  EXPECT_THROW(check_contraction(m, fps, o), Error);
}

TEST(Contraction, SeedDeterministic) {
  const auto m = convolution_map(symmetric_group(3));
  const auto fps = find_fixed_points(m);
  const auto a = check_contraction(m, fps);
  const auto b = check_contraction(m, fps);
  EXPECT_EQ(a.worst_value, b.worst_value);
  EXPECT_EQ(a.witness, b.witness);
}

TEST(BoundaryRepulsion, ConvolutionPasses) {
  for (const auto& g : {cyclic_group(2), symmetric_group(3)}) {
    const auto m = convolution_map(g);
    const auto fps = find_fixed_points(m);
    const auto r = check_boundary_repulsion(m, fps, Distribution::uniform(g.order()));
    EXPECT_TRUE(r.pass);
    EXPECT_GE(r.worst_value, 1.001);
  }
}

TEST(BoundaryRepulsion, S3AlternatingGroupLowerBound) {
  // <c, T(p)> >= 2 <c, p> (1 - <c, p>) near the uniform law on A3.
  const auto g = symmetric_group(3);
  const auto m = convolution_map(g);
  const auto fps = find_fixed_points(m);
  const auto r = check_boundary_repulsion(m, fps, Distribution::uniform(6));
  for (const auto& [k, v] : r.parameters)
    if (k.rfind("min_ratio[", 0) == 0) EXPECT_GE(v, 1.001) << k;
  // within distance r the escaping mass is at most sqrt(2) r
  EXPECT_GE(param(r, "min_ratio[{123,231,312},r=0.1]"), 2.0 * (1.0 - std::sqrt(2.0) * 0.1) - 1e-12);
}

TEST(BoundaryRepulsion, GenotypeLimitAtZero) {
  const auto m = genotype_map(0.2, 0.3);
  const auto fps = find_fixed_points(m);
  const auto r = check_boundary_repulsion(m, fps, Distribution::from_weights(Eigen::Vector2d(0.5, 0.5)));
  EXPECT_TRUE(r.pass);
  // q_j = (pA = 0): c picks the A coordinate, ratio T(p)_A / p_A -> 1 / (1 - t)
  EXPECT_NEAR(param(r, "min_ratio[pA=0,r=1e-04]"), 1.0 / 0.7, 1e-3);
  // and at pA = 1 the ratio tends to 1 / (1 - s)
  EXPECT_NEAR(param(r, "min_ratio[pA=1,r=1e-04]"), 1.0 / 0.8, 1e-3);
}

TEST(BoundaryRepulsion, InitialMassZero) {
  const auto g = cyclic_group(4);
  const auto m = convolution_map(g);
  const auto p0 = Distribution::uniform_on({true, false, true, false});
  EXPECT_EQ(error_of([&] { check_boundary_repulsion(m, find_fixed_points(m), p0); }), Errc::InitialMassZero);
}

TEST(BoundaryRepulsion, NeedsBoundaryPoints) {
  const auto m = genotype_map(-0.1, 0.3);
  const auto fps = find_fixed_points(m);
  // attracting = 1, repelling = 0
  EXPECT_NO_THROW(check_boundary_repulsion(m, fps, Distribution::uniform(2)));
  const auto bad = convolution_map(cyclic_group(2));
  BoundaryOptions o;
  o.radii = {1e-3, 1e-2};
  EXPECT_THROW(check_boundary_repulsion(bad, find_fixed_points(bad), Distribution::uniform(2), o), Error);
}

TEST(GrowthRatio, Examples) {
  const auto z2 = find_fixed_points(convolution_map(cyclic_group(2)));
  {
    const auto r = check_growth_ratio(GrowthSchedule::unit(2), z2);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(param(r, "C_emp"), 1.5);
    EXPECT_EQ(param(r, "argmax_n"), 0.0);
    EXPECT_NEAR(param(r, "d_min"), std::sqrt(2.0) / 2.0, 1e-15);
  }
  {
    const auto r = check_growth_ratio(GrowthSchedule::geometric(100, 1.05), z2);
    EXPECT_TRUE(r.pass);
    EXPECT_LE(param(r, "C_emp"), 1.05 + 1.0 / 100);
  }
  EXPECT_FALSE(check_growth_ratio(GrowthSchedule::geometric(2, 2.0), z2).pass);
  EXPECT_FALSE(check_growth_ratio(GrowthSchedule::geometric(1000, 2.0), z2).pass);
}

TEST(GrowthRatio, S3SmallUrnNeedsBurnIn) {
  // d_min on S3 is |uniform(A3) - uniform(S3)| = 1/sqrt(6); k0 = 2 gives 1.5 at n = 0.
  const auto s3 = find_fixed_points(convolution_map(symmetric_group(3)));
  const auto strict = check_growth_ratio(GrowthSchedule::unit(2), s3);
  EXPECT_FALSE(strict.pass);
  EXPECT_NEAR(param(strict, "d_min"), 1.0 / std::sqrt(6.0), 1e-15);
  const auto later = check_growth_ratio(GrowthSchedule::unit(2), s3, {1000, 1});
  EXPECT_TRUE(later.pass);
  EXPECT_NEAR(param(later, "C_emp"), 4.0 / 3.0, 1e-15);
}

TEST(GrowthRatio, VacuousWithOnePoint) {
  FixedPointSet one;
  one.points.push_back({Distribution::uniform(2), Eigen::VectorXd::Zero(2), "u"});
  EXPECT_TRUE(check_growth_ratio(GrowthSchedule::geometric(2, 5.0), one).pass);
}

TEST(Dirichlet, MeanAndSupport) {
  std::mt19937_64 rng(1);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(4);
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const auto p = sample_dirichlet(4, rng);
    ASSERT_NEAR(p.sum(), 1.0, 1e-12);
    ASSERT_GE(p.minCoeff(), 0.0);
    mean += p;
  }
  mean /= n;
  // each coordinate is Beta(1, 3): variance 3 / 80, so the SE of the mean is ~0.0014
  for (Index i = 0; i < 4; ++i) EXPECT_NEAR(mean[i], 0.25, 5 * std::sqrt(3.0 / 80.0 / n));
}
