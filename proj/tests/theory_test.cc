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
#include "distinf/theory.h"

namespace distinf {
namespace {

LinearTheoryParams base_params() {
  LinearTheoryParams params;
  params.beta0 = 1.0;
  params.beta1 = 2.0;
  params.noise_variance = 1.0;
  params.feature_law = GaussianLaw{1.0, 1.0};
  params.n = 50;
  return params;
}

TEST(McBeta, RequiresEnoughTrials) {
  EXPECT_THROW(mc_beta(base_params(), true, 50, SeededRng(1)),
               InvalidParameterError);
}

TEST(McBeta, NoiselessFitsHaveVanishingVariance) {
  LinearTheoryParams params = base_params();
  params.noise_variance = 0.0;
  const BetaDistributionEstimate estimate =
      mc_beta(params, true, 200, SeededRng(2));
  // The fit is deterministic given the features; only feature randomness
  // remains, and it cancels exactly in the noiseless case.
  EXPECT_LE(estimate.variance[0], 1e-16);
  EXPECT_LE(estimate.variance[1], 1e-16);
}

TEST(McBeta, UnbiasedUnderWellSpecifiedModel) {
  const BetaDistributionEstimate estimate =
      mc_beta(base_params(), true, 10000, SeededRng(3), 2);
  EXPECT_NEAR(estimate.mean[0], 1.0, estimate.ci95_halfwidth[0]);
  EXPECT_NEAR(estimate.mean[1], 2.0, estimate.ci95_halfwidth[1]);
  EXPECT_EQ(estimate.n_trials, 10000);
  EXPECT_EQ(estimate.singular_count, 0);
}

TEST(McBeta, VarianceScalesInverselyWithSampleSize) {
  LinearTheoryParams params50 = base_params();
  LinearTheoryParams params100 = base_params();
  params100.n = 100;
  const BetaDistributionEstimate est50 =
      mc_beta(params50, true, 20000, SeededRng(4), 2);
  const BetaDistributionEstimate est100 =
      mc_beta(params100, true, 20000, SeededRng(5), 2);
  EXPECT_NEAR(est100.variance[1] / est50.variance[1], 0.5, 0.1);
}

TEST(McBeta, DegenerateFeaturesRaise) {
  LinearTheoryParams params = base_params();
  params.feature_law = GaussianLaw{1.0, 0.0};  // constant feature + intercept
  EXPECT_THROW(mc_beta(params, true, 200, SeededRng(6)),
               DegenerateConfigurationError);
}

TEST(Reason1, SeparatesDifferentSlopes) {
  const Reason1Report report =
      check_reason1(1.0, 1.5, base_params(), 10000, SeededRng(7), 2);
  EXPECT_TRUE(report.separated);
  EXPECT_TRUE(report.matches_plants);
  EXPECT_NEAR(report.estimate0.mean[1], 1.0, 0.02);
  EXPECT_NEAR(report.estimate1.mean[1], 1.5, 0.02);
}

TEST(Reason1, EqualSlopesCannotSeparate) {
  const Reason1Report report =
      check_reason1(1.2, 1.2, base_params(), 2000, SeededRng(8), 2);
  EXPECT_FALSE(report.separated);
}

TEST(Reason1, SeparationGrowsWithSlopeGap) {
  const Reason1Report narrow =
      check_reason1(1.0, 1.2, base_params(), 2000, SeededRng(9), 2);
  const Reason1Report wide =
      check_reason1(1.0, 2.0, base_params(), 2000, SeededRng(9), 2);
  EXPECT_GT(wide.separation, narrow.separation);
}

TEST(Reason2, SingleFixedFeatureMatchesHandComputation) {
  // n = 1 with X fixed at x: beta-hat = (x + 1 + eps) / x, so the means are
  // 1 + 1/x under the base law and 1 + 1/(c x) under the scaled one.
  const double x = 2.0, c = 2.0;
  const Reason2Report report =
      check_reason2(c, GaussianLaw{x, 0.0}, 1.0, 1, 20000, SeededRng(10), 2);
  EXPECT_NEAR(report.mean_slope0, 1.0 + 1.0 / x, 0.01);
  EXPECT_NEAR(report.mean_slope1, 1.0 + 1.0 / (c * x), 0.01);
  EXPECT_NEAR(report.shift, (1.0 / c - 1.0) * report.tau, 0.01);
}

TEST(Reason2, UnitScaleShowsNoShift) {
  const Reason2Report report =
      check_reason2(1.0, GaussianLaw{1.0, 1.0}, 1.0, 100, 4000, SeededRng(11), 2);
  EXPECT_FALSE(report.shift_nonzero);
}

TEST(Reason2, AsymmetricFeaturesShiftTowardSubstitutedFactor) {
  const Reason2Report report =
      check_reason2(2.0, GaussianLaw{1.0, 1.0}, 1.0, 100, 20000, SeededRng(12), 2);
  EXPECT_TRUE(report.shift_nonzero);
  // The Monte Carlo shift agrees with (1/c - 1) * tau, not (c - 1) * tau.
  EXPECT_LE(report.rel_error_substituted, 0.15);
  EXPECT_GT(report.rel_error_scaled, 0.5);
}

TEST(Reason2, SymmetricZeroMeanFeaturesAreANegativeControl) {
  const Reason2Report report =
      check_reason2(2.0, GaussianLaw{0.0, 1.0}, 1.0, 100, 4000, SeededRng(13), 2);
  EXPECT_FALSE(report.shift_nonzero);
}

TEST(Reason3, UnitScaleHasUnitRatio) {
  const Reason3Report report =
      check_reason3(1.0, base_params(), 4000, SeededRng(14), 2);
  EXPECT_NEAR(report.ratio, 1.0, 0.1);
}

TEST(Reason3, VarianceRatioFollowsInverseSquare) {
  const Reason3Report report2 =
      check_reason3(2.0, base_params(), 8000, SeededRng(15), 2);
  EXPECT_NEAR(report2.ratio, 0.25, 0.25 * 0.1);
  const Reason3Report report3 =
      check_reason3(3.0, base_params(), 8000, SeededRng(16), 2);
  EXPECT_NEAR(report3.ratio, 1.0 / 9.0, (1.0 / 9.0) * 0.1);
}

TEST(SubsamplingGap, MatchesSquaredDifferenceWhenHidden) {
  const SubsamplingGapReport report =
      subsampling_gap(0.8, 0.2, 0.8, 0.2, /*t_is_feature=*/false, 40000,
                      SeededRng(17));
  EXPECT_NEAR(report.analytic_gap, 0.36, 1e-12);
  EXPECT_TRUE(report.within_3se);
}

TEST(SubsamplingGap, EqualConditionalsGiveZeroGap) {
  const SubsamplingGapReport report =
      subsampling_gap(0.5, 0.5, 0.5, 0.5, /*t_is_feature=*/false, 20000,
                      SeededRng(18));
  EXPECT_EQ(report.analytic_gap, 0.0);
  EXPECT_TRUE(report.within_3se);
}

TEST(SubsamplingGap, AttributeAsFeatureClosesTheGap) {
  const SubsamplingGapReport report =
      subsampling_gap(0.8, 0.2, 0.8, 0.2, /*t_is_feature=*/true, 40000,
                      SeededRng(19));
  EXPECT_EQ(report.analytic_gap, 0.0);
  EXPECT_TRUE(report.within_3se);
  EXPECT_LE(std::abs(report.empirical_gap), 3.0 * report.standard_error);
}

TEST(SubsamplingGap, RejectsProbabilitiesOutsideUnitInterval) {
  EXPECT_THROW(subsampling_gap(1.2, 0.2, 0.5, 0.5, false, 100, SeededRng(20)),
               InvalidParameterError);
}

}  // namespace
}  // namespace distinf
