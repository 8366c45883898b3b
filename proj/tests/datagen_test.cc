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
#include <sstream>

#include "gtest/gtest.h"

#include "distinf/error.h"
#include "distinf/families.h"
#include "distinf/ols.h"

namespace distinf {
namespace {

TEST(TeacherPair, ZeroNoiseGivesIdenticalTeachers) {
  ExpAParams params;
  params.weight_noise_std = 0.0;
  SeededRng rng(1);
  const auto [teacher0, teacher1] = gen_teacher_pair(params, rng);
  EXPECT_TRUE(flatten_params(teacher0, false) == flatten_params(teacher1, false));
}

TEST(TeacherPair, SameSeedsSamePair) {
  ExpAParams params;
  params.weight_noise_std = 0.03;
  SeededRng rng_a(2), rng_b(2);
  const auto pair_a = gen_teacher_pair(params, rng_a);
  const auto pair_b = gen_teacher_pair(params, rng_b);
  EXPECT_TRUE(flatten_params(pair_a.second, false) ==
              flatten_params(pair_b.second, false));
}

TEST(TeacherPair, PerturbationMomentMatches) {
  ExpAParams params;
  params.weight_noise_std = 0.05;
  double sum_sq = 0.0;
  int count = 0;
  for (uint64_t k = 0; k < 12; ++k) {
    params.teacher_seed = 100 + k;
    SeededRng rng(3, k);
    const auto [teacher0, teacher1] = gen_teacher_pair(params, rng);
    const Eigen::VectorXd diff = flatten_params(teacher1, false) -
                                 flatten_params(teacher0, false);
    sum_sq += diff.squaredNorm();
    count += static_cast<int>(diff.size());
  }
  ASSERT_GE(count, 1000);
  const double msd = sum_sq / count;
  EXPECT_NEAR(msd, 0.0025, 0.0025 * 0.2);
}

TEST(SampleExpA, FeatureVarianceNearTwo) {
  ExpAParams params;
  SeededRng rng(4);
  const auto [teacher0, teacher1] = gen_teacher_pair(params, rng);
  SeededRng data_rng(5);
  const Dataset data = sample_expA(0, teacher0, teacher1, 2048, data_rng);
  ASSERT_EQ(data.dim(), 4);
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(sample_variance(data.features.col(j)), 2.0, 0.15);
  }
}

TEST(SampleExpA, LabelsAreNoiselessTeacherOutputs) {
  ExpAParams params;
  params.weight_noise_std = 0.1;
  SeededRng rng(6);
  const auto [teacher0, teacher1] = gen_teacher_pair(params, rng);
  SeededRng data_rng(7);
  const Dataset data = sample_expA(1, teacher0, teacher1, 32, data_rng);
  // Bit-identical through the batched path, and equal to the single-input
  // forward pass up to summation order.
  EXPECT_TRUE(data.labels == predict_rows(teacher1, data.features));
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    EXPECT_NEAR(data.labels[i], forward(teacher1, data.features.row(i))[0], 1e-12);
  }
}

TEST(SampleExpA, ZeroNoiseTeachersAgreeOnSharedFeatures) {
  ExpAParams params;
  params.weight_noise_std = 0.0;
  SeededRng rng(8);
  const auto [teacher0, teacher1] = gen_teacher_pair(params, rng);
  SeededRng data_rng_a(9), data_rng_b(9);
  const Dataset a = sample_expA(0, teacher0, teacher1, 64, data_rng_a);
  const Dataset b = sample_expA(1, teacher0, teacher1, 64, data_rng_b);
  EXPECT_TRUE(a.features == b.features);
  EXPECT_TRUE(a.labels == b.labels);
}

TEST(SampleExpB, MeanShiftTracksIndex) {
  ExpBFamily family(10, 2048);
  SeededRng mid_rng(11), lo_rng(12), hi_rng(13);
  const Dataset mid = family.sample(0.5, mid_rng);
  const Dataset lo = family.sample(0.0, lo_rng);
  const Dataset hi = family.sample(1.0, hi_rng);
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(mid.features.col(j).mean(), 0.0, 0.1);
    EXPECT_NEAR(lo.features.col(j).mean(), -1.0, 0.1);
    EXPECT_NEAR(hi.features.col(j).mean(), 1.0, 0.1);
  }
}

TEST(SampleExpB, LabelMechanismIdenticalAcrossIndices) {
  // The teacher is shared, so equal feature rows get equal labels whatever r
  // generated them.
  ExpBFamily family(14, 16);
  SeededRng rng_a(15), rng_b(16);
  const Dataset a = family.sample(0.2, rng_a);
  Dataset b = family.sample(0.9, rng_b);
  b.features = a.features;
  b.labels = predict_rows(family.teacher(), b.features);
  EXPECT_TRUE(a.labels == b.labels);
}

TEST(SampleExpB, IndexOutsideUnitIntervalThrows) {
  ExpBFamily family(17, 16);
  SeededRng rng(18);
  EXPECT_THROW(family.sample(1.5, rng), InvalidParameterError);
  EXPECT_THROW(family.sample(-0.1, rng), InvalidParameterError);
}

TEST(SampleParty, SpuriousVarianceFollowsChainArithmetic) {
  PartySpec spec;
  spec.party_index = 0;
  spec.records_per_party = 100000;
  SeededRng rng(19);
  const Dataset data = sample_party(spec, rng);
  // Var(X2) = Var(Y) + 0.5 = 2.5 at party 0.
  EXPECT_NEAR(sample_variance(data.features.col(1)), 2.5, 0.1);
}

TEST(SampleParty, CausalSlopeInvariantAcrossPartiesAndSign) {
  for (int party : {0, 3}) {
    for (bool inverted : {false, true}) {
      PartySpec spec;
      spec.party_index = party;
      spec.records_per_party = 100000;
      spec.inverted_correlation = inverted;
      SeededRng rng(20, static_cast<uint64_t>(party * 2 + inverted));
      const Dataset data = sample_party(spec, rng);
      Dataset causal;
      causal.features = data.features.col(0);
      causal.labels = data.labels;
      const OlsFit fit = ols_fit(causal, true);
      EXPECT_NEAR(fit.beta_hat[1], 1.0, 0.03);
    }
  }
}

TEST(SampleParty, InvertedFlagFlipsCorrelationSign) {
  PartySpec spec;
  spec.party_index = 1;
  spec.records_per_party = 20000;
  SeededRng rng_pos(21), rng_neg(22);
  const Dataset straight = sample_party(spec, rng_pos);
  spec.inverted_correlation = true;
  const Dataset inverted = sample_party(spec, rng_neg);
  auto correlation = [](const Dataset& d) {
    const Eigen::VectorXd x2 = d.features.col(1);
    const Eigen::VectorXd y = d.labels;
    const double cx = (x2.array() - x2.mean()).matrix().dot(
                          (y.array() - y.mean()).matrix()) /
                      d.n();
    return cx / std::sqrt(sample_variance(x2) * sample_variance(y));
  };
  EXPECT_GT(correlation(straight), 0.5);
  EXPECT_LT(correlation(inverted), -0.5);
}

std::vector<PartySpec> four_parties() {
  std::vector<PartySpec> parties;
  for (int i = 0; i < 4; ++i) parties.push_back(PartySpec{i, 512, false});
  return parties;
}

TEST(MembershipDatasets, SizesMatchRoster) {
  SeededRng rng(23);
  const auto [d0, d1] = build_membership_datasets(four_parties(), 3, rng);
  EXPECT_EQ(d0.n(), 2048);
  EXPECT_EQ(d1.n(), 1536);
}

TEST(MembershipDatasets, ExcludedUnionIsRowSubset) {
  SeededRng rng(24);
  const auto [d0, d1] = build_membership_datasets(four_parties(), 3, rng);
  // Shared parties are drawn with per-party streams, so d1 is a prefix of d0.
  EXPECT_TRUE(d1.features == d0.features.topRows(d1.n()));
  EXPECT_TRUE(d1.labels == d0.labels.head(d1.n()));
}

TEST(MembershipDatasets, SinglePartyLeavesEmptyComplement) {
  SeededRng rng(25);
  const auto [d0, d1] =
      build_membership_datasets({PartySpec{0, 16, false}}, 0, rng);
  EXPECT_EQ(d0.n(), 16);
  EXPECT_EQ(d1.n(), 0);
}

TEST(MembershipDatasets, DuplicatePartyIndexThrows) {
  SeededRng rng(26);
  EXPECT_THROW(build_membership_datasets(
                   {PartySpec{1, 8, false}, PartySpec{1, 8, false}}, 1, rng),
               InvalidParameterError);
}

TEST(MembershipFamily, EnvironmentsConcatenateToSample) {
  const MembershipFamily family(four_parties(), 3);
  SeededRng rng_a(27), rng_b(27);
  const Dataset whole = family.sample(0.0, rng_a);
  const auto environments = family.sample_environments(0.0, rng_b);
  Dataset rebuilt;
  for (const auto& env : environments) rebuilt = concat(rebuilt, env);
  EXPECT_TRUE(whole.features == rebuilt.features);
  EXPECT_TRUE(whole.labels == rebuilt.labels);
}

TEST(GenLinear, ZeroNoiseLiesOnTheLine) {
  SeededRng rng(28);
  const Dataset data = gen_linear(0.5, -2.0, 0.0, GaussianLaw{1.0, 1.0}, 1.0, 64, rng);
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    EXPECT_NEAR(data.labels[i], 0.5 - 2.0 * data.features(i, 0), 1e-12);
  }
}

TEST(GenLinear, ScaleMultipliesFeatureVariance) {
  SeededRng rng_base(29), rng_scaled(30);
  const Dataset base =
      gen_linear(0.0, 1.0, 1.0, GaussianLaw{1.0, 1.0}, 1.0, 100000, rng_base);
  const Dataset scaled =
      gen_linear(0.0, 1.0, 1.0, GaussianLaw{1.0, 1.0}, 2.0, 100000, rng_scaled);
  const double ratio = sample_variance(scaled.features.col(0)) /
                       sample_variance(base.features.col(0));
  EXPECT_NEAR(ratio, 4.0, 0.2);
}

TEST(GenLinear, OlsRecoversPlantedCoefficients) {
  SeededRng rng(31);
  const Dataset data =
      gen_linear(0.7, 1.3, 1.0, GaussianLaw{1.0, 1.0}, 1.0, 100000, rng);
  const OlsFit fit = ols_fit(data, true);
  EXPECT_NEAR(fit.beta_hat[0], 0.7, 0.02);
  EXPECT_NEAR(fit.beta_hat[1], 1.3, 0.02);
}

Dataset binary_base(int n, SeededRng& rng) {
  // Half the rows in each T stratum; X ~ Bern(1/2); Y arbitrary binary.
  Dataset base;
  base.features.resize(n, 2);
  base.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    base.features(i, 0) = rng.uniform01() < 0.5 ? 0.0 : 1.0;
    base.features(i, 1) = i < n / 2 ? 0.0 : 1.0;
    base.labels[i] = rng.uniform01() < 0.5 ? 0.0 : 1.0;
  }
  return base;
}

TEST(Subsample, FullRatioKeepsOnlyStratumZero) {
  SeededRng rng(32);
  SubsampleParams params;
  params.base = binary_base(400, rng);
  params.t_column = 1;
  params.ratio = 1.0;
  params.t_is_feature = true;
  params.n = 150;
  SeededRng draw_rng(33);
  const Dataset out = subsample_by_attribute(params, draw_rng);
  EXPECT_EQ(out.n(), 150);
  EXPECT_EQ((out.features.col(1).array() == 0.0).count(), 150);
}

TEST(Subsample, ExactRatioInvariant) {
  SeededRng rng(34);
  SubsampleParams params;
  params.base = binary_base(1000, rng);
  params.t_column = 1;
  params.ratio = 0.3;
  params.t_is_feature = true;
  params.n = 357;
  SeededRng draw_rng(35);
  const Dataset out = subsample_by_attribute(params, draw_rng);
  const auto zeros = (out.features.col(1).array() == 0.0).count();
  EXPECT_EQ(zeros, static_cast<Eigen::Index>(std::floor(0.3 * 357)));
}

TEST(Subsample, InsufficientStratumNamesIt) {
  SeededRng rng(36);
  SubsampleParams params;
  params.base = binary_base(200, rng);  // 100 records with T = 0
  params.t_column = 1;
  params.ratio = 0.8;
  params.t_is_feature = true;
  params.n = 200;  // needs 160 T=0 records
  SeededRng draw_rng(37);
  try {
    subsample_by_attribute(params, draw_rng);
    FAIL() << "expected CapacityError";
  } catch (const CapacityError& e) {
    EXPECT_NE(std::string(e.what()).find("T=0"), std::string::npos);
  }
}

TEST(Subsample, HiddenAttributeDropsColumn) {
  SeededRng rng(38);
  SubsampleParams params;
  params.base = binary_base(400, rng);
  params.t_column = 1;
  params.ratio = 0.5;
  params.t_is_feature = false;
  params.n = 100;
  SeededRng draw_rng(39);
  const Dataset out = subsample_by_attribute(params, draw_rng);
  EXPECT_EQ(out.dim(), 1);
}

TEST(DatasetCsv, HeaderAndDeterministicRows) {
  Dataset data;
  data.features.resize(2, 2);
  data.features << 1.5, -2.0, 0.0, 0.25;
  data.labels.resize(2);
  data.labels << 3.0, -1.0;
  std::ostringstream out;
  write_csv(data, out);
  EXPECT_EQ(out.str(), "x1,x2,y\n1.5,-2,3\n0,0.25,-1\n");
}

TEST(Determinism, SamplersArePureFunctionsOfSeed) {
  ExpBFamily family(40, 64);
  SeededRng rng_a(41), rng_b(41);
  const Dataset a = family.sample(0.3, rng_a);
  const Dataset b = family.sample(0.3, rng_b);
  EXPECT_TRUE(a.features == b.features);
  EXPECT_TRUE(a.labels == b.labels);
  EXPECT_TRUE(a.features.allFinite());
}

}  // namespace
}  // namespace distinf
