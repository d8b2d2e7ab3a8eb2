#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "urn/error.hpp"
#include "urn/rational.hpp"
#include "urn/simplex_map.hpp"

using namespace urn;

namespace {

Eigen::VectorXd v2(double a, double b) { return Eigen::Vector2d(a, b); }

/// Direct double sum over pairs (g, h) with h1 * h2 = g, written independently
/// of the library's quotient table.
Eigen::VectorXd convolve_by_pairs(const FiniteGroup& g, const Eigen::VectorXd& p) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(g.order());
  for (Index a = 0; a < g.order(); ++a)
    for (Index b = 0; b < g.order(); ++b) out[g.multiply(a, b)] += p[a] * p[b];
  return out;
}

}  // namespace

TEST(Convolution, Z2Example) {
  const auto t = convolution_map(cyclic_group(2));
  const auto out = t.apply<double>(v2(0.3, 0.7));
  EXPECT_NEAR(out[0], 0.58, 1e-15);
  EXPECT_NEAR(out[1], 0.42, 1e-15);
}

TEST(Convolution, UniformIsFixed) {
  for (const auto& g : {cyclic_group(5), symmetric_group(3), dihedral_group(5), symmetric_group(4)}) {
    const auto t = convolution_map(g);
    const auto u = Distribution::uniform(g.order());
    EXPECT_LE((t.apply<double>(u.weights()) - u.weights()).lpNorm<Eigen::Infinity>(), 1e-15);
  }
}

TEST(Convolution, SubgroupSupportExactInRationals) {
  const auto z4 = cyclic_group(4);
  const auto t = convolution_map(z4);
  RationalVector p(4);
  p << Rational(1, 2), Rational(0), Rational(1, 2), Rational(0);
  EXPECT_EQ(t.apply<Rational>(p), p);
}

TEST(Convolution, MatchesPairSumOracle) {
  oracle::TestRng rng(11);
  for (const auto& g : {symmetric_group(3), dihedral_group(4), direct_product(cyclic_group(3), cyclic_group(2))}) {
    const auto t = convolution_map(g);
    for (int i = 0; i < 200; ++i) {
      const auto p = oracle::random_simplex_point(rng, g.order());
      EXPECT_LE((t.apply<double>(p) - convolve_by_pairs(g, p)).lpNorm<Eigen::Infinity>(), 1e-15);
    }
  }
}

TEST(Parity, Examples) {
  const auto id = parity_map(1);
  oracle::TestRng rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto p = oracle::random_simplex_point(rng, 2);
    EXPECT_LE((id.apply<double>(p) - p).lpNorm<Eigen::Infinity>(), 1e-15);
  }
  EXPECT_NEAR(parity_map(2).apply<double>(v2(0.7, 0.3))[1], 0.42, 1e-15);
  EXPECT_EQ(parity_map(3).apply<double>(v2(0.5, 0.5))[1], 0.5);
}

TEST(Parity, MatchesBinomialOracle) {
  for (int k = 1; k <= 9; ++k) {
    const auto t = parity_map(k);
    for (int i = 0; i <= 50; ++i) {
      const double p1 = i / 50.0;
      EXPECT_NEAR(t.apply<double>(v2(1.0 - p1, p1))[1], oracle::odd_parity_probability(p1, k), 1e-13)
          << "k=" << k << " p1=" << p1;
    }
  }
}

TEST(Parity, AgreesWithZ2Convolution) {
  const auto parity = parity_map(2);
  const auto conv = convolution_map(cyclic_group(2));
  for (int i = 0; i < 1000; ++i) {
    const double p1 = i / 999.0;
    const auto p = v2(1.0 - p1, p1);
    EXPECT_LE((parity.apply<double>(p) - conv.apply<double>(p)).lpNorm<Eigen::Infinity>(), 1e-15);
  }
}

TEST(Parity, Errors) {
  EXPECT_THROW(parity_map(0), Error);
  try {
    parity_map(2).apply<double>(Eigen::Vector3d(0.2, 0.3, 0.5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonBinaryStateSpace);
  }
}

TEST(Genotype, BoundaryAndInteriorFixedPoints) {
  for (auto [s, t] : {std::pair{0.2, 0.3}, {-0.1, 0.3}, {0.5, -2.0}, {-0.5, -0.5}}) {
    const auto g = genotype_map(s, t);
    EXPECT_EQ(g.apply<double>(v2(0.0, 1.0))[0], 0.0);
    EXPECT_EQ(g.apply<double>(v2(1.0, 0.0))[0], 1.0);
  }
  const auto g = genotype_map(0.2, 0.3);
  EXPECT_NEAR(g.apply<double>(v2(0.6, 0.4))[0], 0.6, 1e-15);
  RationalVector q(2);
  q << Rational(3, 5), Rational(2, 5);
  // 0.2 and 0.3 are not exact binary fractions, so compare to the rounded inputs.
  EXPECT_NEAR(to_double(genotype_map(0.25, 0.375).apply<Rational>(q)[0]), 0.6, 1e-15);
}

TEST(Genotype, MatchesClosedForm) {
  oracle::TestRng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double s = 1.0 - 3.0 * rng.uniform();
    const double t = 1.0 - 3.0 * rng.uniform();
    const double p = rng.uniform();
    const double expected = p * (1 - p * s) / (1 - p * p * s - (1 - p) * (1 - p) * t);
    EXPECT_NEAR(genotype_map(s, t).apply<double>(v2(p, 1 - p))[0], expected, 1e-12);
  }
}

TEST(Genotype, NoSelectionIsIdentity) {
  const auto g = genotype_map(0.0, 0.0);
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    EXPECT_EQ(g.apply<double>(v2(p, 1.0 - p))[0], p / (p + (1.0 - p)));
  }
}

TEST(Genotype, Errors) {
  for (auto [s, t] : {std::pair{1.0, 0.0}, {0.0, 1.0}, {2.0, 0.5}}) {
    try {
      genotype_map(s, t);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::InvalidFitness);
    }
  }
  EXPECT_THROW(genotype_map(0.1, 0.1).apply<double>(Eigen::Vector3d(0.2, 0.3, 0.5)), Error);
}

TEST(SimplexMap, PreservesSimplex) {
  oracle::TestRng rng(17);
  const std::vector<SimplexMap> maps{convolution_map(symmetric_group(3)), convolution_map(cyclic_group(7)),
                                     parity_map(2), parity_map(5), genotype_map(0.2, 0.3),
                                     genotype_map(-3.0, 0.9), genotype_map(-0.5, -0.5)};
  for (const auto& m : maps) {
    for (int i = 0; i < 10000; ++i) {
      const auto p = oracle::random_simplex_point(rng, m.dimension());
      const auto out = m.apply<double>(p);
      ASSERT_NEAR(out.sum(), 1.0, 1e-12) << m.descriptor().to_string();
      ASSERT_GE(out.minCoeff(), 0.0) << m.descriptor().to_string();
    }
  }
}

TEST(SimplexMap, DistributionOverload) {
  const auto m = convolution_map(cyclic_group(2));
  const auto out = m.apply(Distribution::from_weights(v2(0.3, 0.7)));
  EXPECT_NEAR(out[0], 0.58, 1e-15);
}

TEST(SimplexMap, Descriptors) {
  EXPECT_EQ(convolution_map(symmetric_group(3)).descriptor().to_string(), "convolution(S3)");
  EXPECT_EQ(parity_map(3).descriptor().to_string(), "parity(k=3)");
  EXPECT_EQ(parity_map(3).labels(), (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(genotype_map(0.2, 0.3).labels(), (std::vector<std::string>{"A", "a"}));
  EXPECT_EQ(convolution_map(cyclic_group(4)).dimension(), 4);
}

TEST(SimplexMap, CustomIsFloatingPointOnly) {
  const auto m = custom_map([](const Eigen::VectorXd& p) { return p; }, {"x", "y"}, "id");
  EXPECT_EQ(m.kind(), MapKind::Custom);
  EXPECT_EQ(m.apply<double>(v2(0.25, 0.75))[1], 0.75);
  RationalVector q(2);
  q << Rational(1, 2), Rational(1, 2);
  EXPECT_THROW(m.apply<Rational>(q), Error);
}

TEST(Convolution, SquaredNormDichotomy) {
  // sum (Tp)_g^2 <= sum p_g^2, with equality only for p uniform on its support.
  oracle::TestRng rng(23);
  const auto g = symmetric_group(3);
  const auto t = convolution_map(g);
  int equalities = 0;
  for (int i = 0; i < 3000; ++i) {
    Eigen::VectorXd p = oracle::random_simplex_point(rng, 6);
    // Mix in points that are uniform on a random support, to hit equality.
    if (i % 3 == 0) {
      for (Index j = 0; j < 6; ++j) p[j] = rng.below(2);
      if (p.sum() == 0) p[0] = 1;
      p /= p.sum();
    }
    const double before = p.squaredNorm();
    const double after = t.apply<double>(p).squaredNorm();
    EXPECT_LE(after, before + 1e-12);
    if (std::abs(after - before) <= 1e-12) {
      ++equalities;
      double lo = 1.0, hi = 0.0;
      for (Index j = 0; j < 6; ++j)
        if (p[j] > 0) lo = std::min(lo, p[j]), hi = std::max(hi, p[j]);
      EXPECT_LE(hi - lo, 1e-9);
    }
  }
  EXPECT_GT(equalities, 0);
}
