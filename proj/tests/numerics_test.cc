// Copyright 2026 The distinf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "gtest/gtest.h"

#include "distinf/error.h"
#include "distinf/ols.h"
#include "distinf/rng.h"

namespace distinf {
namespace {

TEST(SeededRng, DegenerateVarianceIsConstant) {
  SeededRng rng(7);
  const Eigen::VectorXd draws = gaussian_vector(rng, 3.0, 0.0, 5);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(draws[i], 3.0);
}

TEST(SeededRng, SameSeedSameSequence) {
  SeededRng a(42, 5), b(42, 5);
  const Eigen::VectorXd va = gaussian_vector(a, 0.0, 1.0, 100);
  const Eigen::VectorXd vb = gaussian_vector(b, 0.0, 1.0, 100);
  EXPECT_TRUE(va == vb);
}

TEST(SeededRng, DistinctStreamsDiffer) {
  SeededRng a(42, 0), b(42, 1);
  const Eigen::VectorXd va = gaussian_vector(a, 0.0, 1.0, 16);
  const Eigen::VectorXd vb = gaussian_vector(b, 0.0, 1.0, 16);
  EXPECT_FALSE(va == vb);
}

TEST(SeededRng, MomentsOfLargeSample) {
  SeededRng rng(1234);
  const Eigen::VectorXd draws = gaussian_vector(rng, 0.0, 4.0, 100000);
  EXPECT_NEAR(draws.mean(), 0.0, 0.05);
  EXPECT_NEAR(sample_variance(draws), 4.0, 0.15);
}

TEST(SeededRng, NegativeVarianceThrows) {
  SeededRng rng(1);
  EXPECT_THROW(rng.gaussian(0.0, -1.0), InvalidParameterError);
}

TEST(SeededRng, UniformBelowIsInRangeAndCoversValues) {
  SeededRng rng(9);
  bool seen[5] = {};
  for (int i = 0; i < 200; ++i) {
    const uint64_t v = rng.uniform_below(5);
    ASSERT_LT(v, 5u);
    seen[v] = true;
  }
  for (bool s : seen) EXPECT_TRUE(s);
}

TEST(SeededRng, StableStreamIndexIsDeterministic) {
  EXPECT_EQ(stable_stream_index("shadow", 3), stable_stream_index("shadow", 3));
  EXPECT_NE(stable_stream_index("shadow", 3), stable_stream_index("shadow", 4));
  EXPECT_NE(stable_stream_index("shadow", 3), stable_stream_index("game-trial", 3));
}

Dataset make_dataset(std::initializer_list<double> xs,
                     std::initializer_list<double> ys) {
  Dataset data;
  data.features.resize(static_cast<Eigen::Index>(xs.size()), 1);
  data.labels.resize(static_cast<Eigen::Index>(ys.size()));
  Eigen::Index i = 0;
  for (double x : xs) data.features(i++, 0) = x;
  i = 0;
  for (double y : ys) data.labels[i++] = y;
  return data;
}

TEST(OlsFit, ExactInterpolation) {
  const OlsFit fit = ols_fit(make_dataset({0, 1, 2}, {1, 3, 5}), true);
  EXPECT_NEAR(fit.beta_hat[0], 1.0, 1e-12);
  EXPECT_NEAR(fit.beta_hat[1], 2.0, 1e-12);
  EXPECT_NEAR(fit.residual_mse, 0.0, 1e-12);
}

TEST(OlsFit, HandSolvedNormalEquations) {
  // Normal equations for X = (0,1,2), Y = (0,1,3) give (-1/6, 3/2).
  const OlsFit fit = ols_fit(make_dataset({0, 1, 2}, {0, 1, 3}), true);
  EXPECT_NEAR(fit.beta_hat[0], -1.0 / 6.0, 1e-12);
  EXPECT_NEAR(fit.beta_hat[1], 3.0 / 2.0, 1e-12);
  EXPECT_NEAR(fit.residual_mse, 1.0 / 18.0, 1e-12);
}

TEST(OlsFit, NoInterceptScalarCase) {
  // (1*1 + 2*5) / (1 + 4) = 11/5.
  const OlsFit fit = ols_fit(make_dataset({1, 2}, {1, 5}), false);
  ASSERT_EQ(fit.beta_hat.size(), 1);
  EXPECT_NEAR(fit.beta_hat[0], 11.0 / 5.0, 1e-12);
}

TEST(OlsFit, RankDeficientDesignNamesConditionNumber) {
  Dataset data;
  data.features.resize(4, 2);
  data.features.col(0) << 1, 2, 3, 4;
  data.features.col(1) = 2.0 * data.features.col(0);  // collinear
  data.labels.resize(4);
  data.labels << 1, 2, 3, 4;
  try {
    ols_fit(data, false);
    FAIL() << "expected SingularSystemError";
  } catch (const SingularSystemError& e) {
    EXPECT_NE(std::string(e.what()).find("condition number"), std::string::npos);
  }
}

TEST(OlsFit, TooFewRecordsThrows) {
  EXPECT_THROW(ols_fit(make_dataset({1}, {2}), true), InvalidParameterError);
}

TEST(OlsFit, ResidualOrthogonalToDesignColumns) {
  SeededRng rng(11);
  Dataset data;
  const int n = 200, d = 3;
  data.features.resize(n, d);
  data.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) data.features(i, j) = rng.gaussian(0.0, 1.0);
    data.labels[i] = rng.gaussian(0.0, 2.0);
  }
  const OlsFit fit = ols_fit(data, true);
  Eigen::MatrixXd design(n, d + 1);
  design.col(0).setOnes();
  design.rightCols(d) = data.features;
  const Eigen::VectorXd residual = design * fit.beta_hat - data.labels;
  for (int j = 0; j <= d; ++j) {
    const double dot = std::abs(design.col(j).dot(residual));
    EXPECT_LE(dot, 1e-8 * n * design.col(j).norm() * residual.norm() + 1e-12);
  }
}

TEST(OlsFit, RecoversPlantedCoefficientsOnNoiselessData) {
  SeededRng rng(13);
  Dataset data;
  const int n = 50, d = 4;
  data.features.resize(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) data.features(i, j) = rng.gaussian(0.0, 1.0);
  }
  Eigen::VectorXd beta(d + 1);
  beta << 0.5, -1.0, 2.0, 0.25, -3.0;
  data.labels = beta[0] + (data.features * beta.tail(d)).array();
  const OlsFit fit = ols_fit(data, true);
  for (int j = 0; j <= d; ++j) {
    EXPECT_NEAR(fit.beta_hat[j], beta[j], 1e-8 * std::abs(beta[j]) + 1e-10);
  }
}

TEST(SampleVariance, ConstantVectorIsZero) {
  Eigen::VectorXd v(3);
  v << 1, 1, 1;
  EXPECT_EQ(sample_variance(v), 0.0);
}

TEST(SampleVariance, HandValueWithPopulationDivisor) {
  Eigen::VectorXd v(2);
  v << 0, 2;
  EXPECT_DOUBLE_EQ(sample_variance(v), 1.0);
}

TEST(SampleVariance, EmptyVectorThrows) {
  Eigen::VectorXd v(0);
  EXPECT_THROW(sample_variance(v), InvalidParameterError);
}

TEST(SampleVariance, TranslationInvariantAndQuadraticScaling) {
  SeededRng rng(17);
  const Eigen::VectorXd v = gaussian_vector(rng, 1.0, 2.0, 257);
  const double base = sample_variance(v);
  EXPECT_NEAR(sample_variance(v.array() + 42.0), base, 1e-9 * base);
  for (double c : {0.5, 2.0, -3.0}) {
    EXPECT_NEAR(sample_variance(c * v), c * c * base, 1e-9 * c * c * base);
  }
}

}  // namespace
}  // namespace distinf
