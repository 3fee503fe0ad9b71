#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "hdvar/model.hpp"
#include "oracles.hpp"

using namespace hdvar;

namespace {
const SeedSpec kSeed{20240101, "model-test", 0};
}

TEST(SampleDesign, Deterministic) {
  const auto a = sample_design(2, 3, kSeed);
  const auto b = sample_design(2, 3, kSeed);
  ASSERT_EQ(a.rows(), 2u);
  ASSERT_EQ(a.cols(), 3u);
  EXPECT_FALSE(a.standardized());
  for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(a.data()[k], b.data()[k]);
}

TEST(SampleDesign, OneByOne) {
  const auto a = sample_design(1, 1, kSeed);
  EXPECT_TRUE(std::isfinite(a(0, 0)));
}

TEST(SampleDesign, RejectsEmptyShape) {
  EXPECT_THROW(sample_design(0, 3, kSeed), std::invalid_argument);
  EXPECT_THROW(sample_design(3, 0, kSeed), std::invalid_argument);
}

TEST(SampleDesign, EntryMomentsAtLargeSize) {
  const auto x = sample_design(500, 500, kSeed);
  double s = 0, ss = 0;
  for (double v : x.data()) s += v;
  const double mean = s / 250000.0;
  for (double v : x.data()) ss += (v - mean) * (v - mean);
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(ss / 249999.0, 1.0, 0.02);
}

TEST(StandardizeRows, AlreadyStandardizedRowUnchanged) {
  const DesignMatrix x(1, 2, {1.0, -1.0});
  const auto s = standardize_rows(x);
  EXPECT_TRUE(s.standardized());
  EXPECT_NEAR(s(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(s(0, 1), -1.0, 1e-15);
}

TEST(StandardizeRows, HandComputedRow) {
  const auto s = standardize_rows(DesignMatrix(1, 3, {1.0, 2.0, 3.0}));
  EXPECT_NEAR(s(0, 0), -std::sqrt(1.5), 1e-15);
  EXPECT_NEAR(s(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(s(0, 2), std::sqrt(1.5), 1e-15);
}

TEST(StandardizeRows, RejectsConstantRowAndNarrowDesign) {
  EXPECT_THROW(standardize_rows(DesignMatrix(2, 3, {1, 2, 3, 5, 5, 5})), std::invalid_argument);
  EXPECT_THROW(standardize_rows(DesignMatrix(2, 1, {1, 2})), std::invalid_argument);
}

TEST(StandardizeRows, InvariantAndIdempotence) {
  for (std::uint64_t r = 0; r < 20; ++r) {
    const std::size_t n = 3 + r % 5, p = 2 + (r * 7) % 40;
    const auto s1 = standardize_rows(sample_design(n, p, kSeed.with_index(r)));
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0, ss = 0;
      for (double v : s1.row(i)) {
        sum += v;
        ss += v * v;
      }
      EXPECT_NEAR(sum, 0.0, 1e-9 * p);
      EXPECT_NEAR(ss, static_cast<double>(p), 1e-9 * p * p);
    }
    const auto s2 = standardize_rows(s1);
    for (std::size_t k = 0; k < n * p; ++k) EXPECT_NEAR(s1.data()[k], s2.data()[k], 1e-12);
  }
}

TEST(DesignMatrix, StandardizedFlagIsChecked) {
  EXPECT_THROW(DesignMatrix(1, 2, {1.0, 2.0}, true), std::invalid_argument);
  EXPECT_THROW(DesignMatrix(1, 2, {1.0}), DimensionError);
  EXPECT_THROW(DesignMatrix(1, 1, {NAN}), std::invalid_argument);
}

TEST(SampleBetaSpherical, ZeroPriorGivesZeros) {
  EXPECT_EQ(sample_beta_spherical(4, 0.0, kSeed), std::vector<double>(4, 0.0));
}

TEST(SampleBetaSpherical, SquaredNormConcentrates) {
  const auto b = sample_beta_spherical(10000, 1.0, kSeed);
  EXPECT_NEAR(linalg::squared_norm(b), 1.0, 0.05);
}

TEST(SampleBetaSpherical, Deterministic) {
  EXPECT_EQ(sample_beta_spherical(3, 2.0, kSeed), sample_beta_spherical(3, 2.0, kSeed));
  EXPECT_THROW(sample_beta_spherical(3, -1.0, kSeed), std::invalid_argument);
}

TEST(SampleBetaFixedNorm, HasRequestedNorm) {
  const auto b = sample_beta_fixed_norm(50, 2.5, kSeed);
  EXPECT_NEAR(linalg::squared_norm(b), 2.5, 1e-12);
}

TEST(ConditionalMeans, ZeroAndUnitRows) {
  const DesignMatrix x(2, 2, {1, 0, 0, 1});
  EXPECT_EQ(conditional_means(x, std::vector<double>{0, 0}).mu, (std::vector<double>{0, 0}));
  EXPECT_EQ(conditional_means(x, std::vector<double>{3, 4}).mu, (std::vector<double>{3, 4}));
  EXPECT_THROW(conditional_means(x, std::vector<double>{1, 2, 3}), DimensionError);
}

TEST(ConditionalMeans, MatchesNaiveProduct) {
  for (std::uint64_t r = 0; r < 10; ++r) {
    const auto x = sample_design(3, 5, kSeed.sub("cm").with_index(r));
    const auto beta = sample_beta_spherical(5, 2.0, kSeed.sub("cm-beta").with_index(r));
    std::vector<std::vector<double>> rows(3);
    for (std::size_t i = 0; i < 3; ++i) rows[i].assign(x.row(i).begin(), x.row(i).end());
    const auto ref = oracle::matvec(rows, beta);
    const auto mu = conditional_means(x, beta).mu;
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(mu[i], ref[i], 1e-12);
  }
}

TEST(SampleResponse, NearDegenerateNoise) {
  auto x = std::make_shared<const DesignMatrix>(sample_design(20, 30, kSeed));
  const auto d = sample_response(x, {std::vector<double>(30, 0.0), 1e-12}, kSeed.sub("y"));
  EXPECT_LT(linalg::squared_norm(d.response) / 20.0, 1e-9);
}

TEST(SampleResponse, ResidualVariance) {
  auto x = std::make_shared<const DesignMatrix>(sample_design(1000, 2, kSeed));
  const GaussianLinearModel m{{1.0, 0.0}, 1.0};
  const auto d = sample_response(x, m, kSeed.sub("y"));
  const auto mu = conditional_means(*x, m.beta).mu;
  double s = 0, ss = 0;
  for (std::size_t i = 0; i < 1000; ++i) s += d.response[i] - mu[i];
  const double mean = s / 1000.0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const double e = d.response[i] - mu[i] - mean;
    ss += e * e;
  }
  EXPECT_NEAR(ss / 999.0, 1.0, 0.15);
}

TEST(SampleResponse, DeterministicAndChecksShape) {
  auto x = std::make_shared<const DesignMatrix>(sample_design(4, 3, kSeed));
  const GaussianLinearModel m{{0.1, 0.2, 0.3}, 0.5};
  EXPECT_EQ(sample_response(x, m, kSeed).response, sample_response(x, m, kSeed).response);
  EXPECT_THROW(sample_response(x, {{0.1, 0.2}, 0.5}, kSeed), DimensionError);
  EXPECT_THROW(sample_response(x, {{0.1, 0.2, 0.3}, 0.0}, kSeed), std::invalid_argument);
}

// With standardized rows and beta ~ N(0, eta^2/p I), each mu_i ~ N(0, eta^2).
TEST(ModelProperties, MarginalVarianceOfMeanUnderSphericalPrior) {
  const std::size_t p = 40;
  const auto x = standardize_rows(sample_design(1, p, kSeed.sub("marg")));
  const double eta2 = 1.7;
  const int draws = 20000;
  std::vector<double> mu(draws);
  for (int d = 0; d < draws; ++d)
    mu[d] = conditional_means(x, sample_beta_spherical(p, eta2, kSeed.sub("marg-beta").with_index(d))).mu[0];
  double s = 0, ss = 0;
  for (double v : mu) s += v;
  const double mean = s / draws;
  for (double v : mu) ss += (v - mean) * (v - mean);
  const double var = ss / (draws - 1);
  // SE of a normal sample variance: eta^2 sqrt(2 / (m - 1)).
  EXPECT_NEAR(var, eta2, 3.0 * eta2 * std::sqrt(2.0 / (draws - 1)));
}

// E (x^T beta)^4 = 3 ||beta||^4 for x ~ N(0, I); the centered form is 2 ||beta||^4.
TEST(ModelProperties, FourthMomentIdentity) {
  const std::vector<double> beta{0.3, -1.1, 0.7, 0.2};
  const double b2 = linalg::squared_norm(beta);
  const int draws = 1000000;
  NormalStream rng(kSeed.sub("fourth"));
  double s = 0, ss = 0;
  std::vector<double> x(beta.size());
  for (int d = 0; d < draws; ++d) {
    for (double& v : x) v = rng.normal();
    double t = 0;
    for (std::size_t j = 0; j < beta.size(); ++j) t += x[j] * beta[j];
    const double q = t * t * t * t;
    s += q;
    ss += q * q;
  }
  const double mean = s / draws;
  const double se = std::sqrt((ss / draws - mean * mean) / draws);
  EXPECT_NEAR(mean, 3.0 * b2 * b2, 3.0 * se);
  EXPECT_NEAR(mean - b2 * b2, 2.0 * b2 * b2, 3.0 * se);
}

// var(||X beta||^2 / n) = 2 ||beta||^4 / n over unstandardized designs.
TEST(ModelProperties, SignalEnergyVariance) {
  const std::vector<double> beta{0.5, 0.5, -0.5, 0.5, 1.0};
  const double b2 = linalg::squared_norm(beta);
  const std::size_t n = 50;
  const int designs = 10000;
  std::vector<double> e(designs);
  for (int d = 0; d < designs; ++d) {
    const auto x = sample_design(n, beta.size(), kSeed.sub("energy").with_index(d));
    e[d] = linalg::squared_norm(conditional_means(x, beta).mu) / n;
  }
  double s = 0;
  for (double v : e) s += v;
  const double mean = s / designs;
  double m2 = 0, m4 = 0;
  for (double v : e) {
    const double dv = v - mean;
    m2 += dv * dv;
    m4 += dv * dv * dv * dv;
  }
  const double var = m2 / (designs - 1);
  const double se = std::sqrt((m4 / designs - var * var) / designs);
  EXPECT_NEAR(var, 2.0 * b2 * b2 / n, 5.0 * se);
}
