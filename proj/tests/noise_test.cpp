// Copyright 2026 The fedmine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fedmine/noise.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "support/stats.hpp"

namespace fedmine {
namespace {

TEST(NoiseTest, ParamsValidate) {
  EXPECT_THROW(PolyaParams(0.0, 0.5), std::invalid_argument);
  EXPECT_THROW(PolyaParams(-1.0, 0.5), std::invalid_argument);
  EXPECT_THROW(PolyaParams(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(PolyaParams(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW((NoiseParams{0.0, 50, 1000}.validate()), std::invalid_argument);
  EXPECT_THROW((NoiseParams{2.0, 0, 1000}.validate()), std::invalid_argument);
  EXPECT_THROW((NoiseParams{2.0, 50, 0}.validate()), std::invalid_argument);
}

TEST(NoiseTest, AlphaIsAlwaysDerived) {
  const NoiseParams params{2.0, 50, 1000};
  EXPECT_DOUBLE_EQ(params.alpha(), std::exp(-2.0 / 50.0));
  EXPECT_GT(params.alpha(), 0.0);
  EXPECT_LT(params.alpha(), 1.0);
}

TEST(NoiseTest, GeometricPmfAtZero) {
  const double alpha = 0.5;
  EXPECT_DOUBLE_EQ(geometric_pmf(alpha, 0), (1.0 - alpha) / (1.0 + alpha));
}

TEST(NoiseTest, GeometricPmfIsSymmetric) {
  const double alpha = std::exp(-0.04);
  for (std::int64_t x = 0; x <= 200; x += 7) {
    EXPECT_DOUBLE_EQ(geometric_pmf(alpha, x), geometric_pmf(alpha, -x));
  }
}

TEST(NoiseTest, GeometricVarianceBySummationMatchesClosedForm) {
  const double alpha = std::exp(-0.04);
  // Direct series summation far past the tail.
  long double variance = 0.0L;
  for (std::int64_t x = 1; x <= 4000; ++x) {
    variance += 2.0L * geometric_pmf(alpha, x) * static_cast<long double>(x) *
                static_cast<long double>(x);
  }
  const double closed_form = 2.0 * alpha / ((1.0 - alpha) * (1.0 - alpha));
  EXPECT_NEAR(static_cast<double>(variance), closed_form,
              1e-6 * closed_form);
  EXPECT_NEAR(closed_form, 1249.8333, 1e-3);
}

TEST(NoiseTest, PolyaPmfAtZero) {
  EXPECT_DOUBLE_EQ(polya_pmf(PolyaParams(1.0, 0.5), 0), 0.5);
  const PolyaParams params(0.37, 0.8);
  EXPECT_DOUBLE_EQ(polya_pmf(params, 0), std::pow(1.0 - 0.8, 0.37));
  EXPECT_DOUBLE_EQ(polya_pmf(params, -1), 0.0);
}

TEST(NoiseTest, PolyaShapeOneIsGeometricOnNaturals) {
  const double p = 0.73;
  const PolyaParams params(1.0, p);
  for (std::int64_t x = 0; x <= 40; ++x) {
    EXPECT_NEAR(polya_pmf(params, x), (1.0 - p) * std::pow(p, x), 1e-14);
  }
}

TEST(NoiseTest, PolyaPmfMassSumsToOne) {
  const PolyaParams params(0.001, 0.96);
  long double total = 0.0L;
  for (std::int64_t x = 0; x <= 10000; ++x) total += polya_pmf(params, x);
  EXPECT_GE(static_cast<double>(total), 1.0 - 1e-9);
  EXPECT_LE(static_cast<double>(total), 1.0 + 1e-9);
}

TEST(NoiseTest, PolyaSamplerMeanMatchesMoment) {
  const double p = std::exp(-0.04);
  const PolyaParams params(0.001, p);
  Rng rng(make_rng(42));
  const std::size_t n = 1000000;
  std::vector<std::int64_t> samples(n);
  for (auto& s : samples) s = sample_polya(params, rng);
  const double mean = testing::sample_mean(samples);
  const double expected_mean = params.shape * p / (1.0 - p);
  const double expected_var = params.shape * p / ((1.0 - p) * (1.0 - p));
  const double three_se = 3.0 * std::sqrt(expected_var / n);
  EXPECT_NEAR(mean, expected_mean, three_se);
}

TEST(NoiseTest, PolyaSamplerPassesChiSquare) {
  const PolyaParams params(0.01, 0.9);
  Rng rng(make_rng(7));
  std::vector<std::int64_t> samples(1000000);
  for (auto& s : samples) s = sample_polya(params, rng);
  const auto gof = testing::chi_square_gof(
      samples, [&](std::int64_t x) { return polya_pmf(params, x); },
      /*two_sided=*/false);
  EXPECT_GE(gof.p_value, 0.001) << "stat " << gof.statistic << " over "
                                << gof.bins << " bins";
}

TEST(NoiseTest, OwnerNoiseIsCenteredAtZero) {
  const NoiseParams params{2.0, 50, 1000};
  Rng rng(make_rng(1234));
  const std::size_t n = 200000;
  std::vector<std::int64_t> samples(n);
  for (auto& s : samples) s = sample_owner_noise(params, rng);
  const PolyaParams polya = params.owner_polya();
  const double share_var = 2.0 * polya.shape * polya.success /
                           ((1.0 - polya.success) * (1.0 - polya.success));
  const double three_se = 3.0 * std::sqrt(share_var / n);
  EXPECT_NEAR(testing::sample_mean(samples), 0.0, three_se);
}

// Distributed-noise identity at reduced scale (the acceptance suite runs
// the full parameters): the sum of P owner shares must look exactly
// two-sided geometric.
TEST(NoiseTest, OwnerNoiseSumsToTwoSidedGeometric) {
  const NoiseParams params{2.0, 50, 40};
  const double alpha = params.alpha();
  Rng rng(make_rng(99));
  std::vector<std::int64_t> sums(30000);
  for (auto& sum : sums) {
    std::int64_t total = 0;
    for (int i = 0; i < params.responders; ++i) {
      total += sample_owner_noise(params, rng);
    }
    sum = total;
  }
  const auto gof = testing::chi_square_gof(
      sums, [&](std::int64_t x) { return geometric_pmf(alpha, x); },
      /*two_sided=*/true);
  EXPECT_GE(gof.p_value, 0.001) << "stat " << gof.statistic << " over "
                                << gof.bins << " bins";
  const double expected_var = 2.0 * alpha / ((1.0 - alpha) * (1.0 - alpha));
  EXPECT_NEAR(testing::sample_variance(sums), expected_var,
              0.05 * expected_var);
}

TEST(NoiseTest, SamplingIsDeterministicUnderFixedSeed) {
  const PolyaParams params(0.5, 0.7);
  Rng a(make_rng(5));
  Rng b(make_rng(5));
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(sample_polya(params, a), sample_polya(params, b));
  }
}

}  // namespace
}  // namespace fedmine
