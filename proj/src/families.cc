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

#include "distinf/families.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "distinf/error.h"
#include "distinf/ols.h"

namespace distinf {
namespace {

constexpr int kTeacherCalibrationSamples = 8192;
constexpr double kFeatureVariance = 2.0;  // per-coordinate Var of X in exp A/B

Eigen::MatrixXd gaussian_matrix(SeededRng& rng, double mean, double variance,
                                int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.gaussian(mean, variance);
  }
  return m;
}

}  // namespace

MlpModel make_teacher(const std::vector<int>& layer_dims, double weight_variance,
                      SeededRng& rng) {
  MlpModel teacher = random_init(layer_dims, weight_variance, rng);
  if (teacher.output_dim() != 1) {
    throw InvalidParameterError("make_teacher: output dimension must be 1");
  }
  // Calibrate the output layer so labels are standardized under the
  // experiments' feature law X ~ N(0, 2I). Uses a dedicated stream so the
  // caller's sequence is unaffected by the calibration sample size.
  SeededRng calib_rng = rng.stream("teacher-calibration", 0);
  const Eigen::MatrixXd x = gaussian_matrix(
      calib_rng, 0.0, kFeatureVariance, teacher.input_dim(), kTeacherCalibrationSamples);
  const Eigen::RowVectorXd out = forward_batch(teacher, x).row(0);
  const double mean = out.mean();
  const double var =
      (out.array() - mean).square().sum() / static_cast<double>(out.size());
  const double scale = var > 0.0 ? 1.0 / std::sqrt(var) : 1.0;
  auto& w_out = teacher.weights.back();
  auto& b_out = teacher.biases.back();
  w_out *= scale;
  b_out[0] = (b_out[0] - mean) * scale;
  return teacher;
}

std::pair<MlpModel, MlpModel> gen_teacher_pair(const ExpAParams& params,
                                               SeededRng& rng) {
  if (!(params.weight_noise_std >= 0.0)) {
    throw InvalidParameterError("gen_teacher_pair: weight_noise_std must be >= 0");
  }
  SeededRng teacher_rng = SeededRng(params.teacher_seed).stream("teacher", 0);
  MlpModel teacher0 =
      make_teacher(params.teacher_dims, params.teacher_weight_variance, teacher_rng);
  MlpModel teacher1 = teacher0;
  const double noise_variance = params.weight_noise_std * params.weight_noise_std;
  for (size_t l = 0; l < teacher1.weights.size(); ++l) {
    auto& w = teacher1.weights[l];
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        w(i, j) += rng.gaussian(0.0, noise_variance);
      }
    }
    auto& b = teacher1.biases[l];
    for (Eigen::Index i = 0; i < b.size(); ++i) {
      b[i] += rng.gaussian(0.0, noise_variance);
    }
  }
  return {std::move(teacher0), std::move(teacher1)};
}

Dataset sample_expA(int b, const MlpModel& teacher0, const MlpModel& teacher1,
                    int n, SeededRng& rng) {
  if (b != 0 && b != 1) {
    throw InvalidParameterError("sample_expA: b must be 0 or 1");
  }
  if (n < 1) throw InvalidParameterError("sample_expA: n must be >= 1");
  const MlpModel& teacher = b == 0 ? teacher0 : teacher1;
  Dataset data;
  data.features =
      gaussian_matrix(rng, 0.0, kFeatureVariance, n, teacher.input_dim());
  data.labels = predict_rows(teacher, data.features);
  return data;
}

Dataset sample_expB(double r, const MlpModel& teacher, int n, SeededRng& rng) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw InvalidParameterError("sample_expB: r must lie in [0, 1]");
  }
  if (n < 1) throw InvalidParameterError("sample_expB: n must be >= 1");
  const double mean = -1.0 + 2.0 * r;
  Dataset data;
  data.features =
      gaussian_matrix(rng, mean, kFeatureVariance, n, teacher.input_dim());
  data.labels = predict_rows(teacher, data.features);
  return data;
}

Dataset sample_party(const PartySpec& spec, SeededRng& rng) {
  if (spec.party_index < 0) {
    throw InvalidParameterError("sample_party: party_index must be >= 0");
  }
  if (spec.records_per_party < 1) {
    throw InvalidParameterError("sample_party: records_per_party must be >= 1");
  }
  const int n = spec.records_per_party;
  const double spurious_noise_variance = 0.5 + spec.party_index;
  const double sign = spec.inverted_correlation ? -1.0 : 1.0;
  Dataset data;
  data.features.resize(n, 2);
  data.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    const double x1 = rng.gaussian(0.0, 1.0);
    const double y = x1 + rng.gaussian(0.0, 1.0);
    const double x2 = sign * y + rng.gaussian(0.0, spurious_noise_variance);
    data.features(i, 0) = x1;
    data.features(i, 1) = x2;
    data.labels[i] = y;
  }
  return data;
}

std::pair<Dataset, Dataset> build_membership_datasets(
    const std::vector<PartySpec>& parties, int i0, SeededRng& rng) {
  if (parties.empty()) {
    throw InvalidParameterError("build_membership_datasets: no parties");
  }
  std::set<int> indices;
  bool i0_present = false;
  for (const auto& party : parties) {
    if (!indices.insert(party.party_index).second) {
      throw InvalidParameterError(
          "build_membership_datasets: duplicate party index " +
          std::to_string(party.party_index));
    }
    i0_present |= party.party_index == i0;
  }
  if (!i0_present) {
    throw InvalidParameterError("build_membership_datasets: i0 = " +
                                std::to_string(i0) + " is not a party index");
  }
  Dataset d0, d1;
  for (const auto& party : parties) {
    SeededRng party_rng =
        rng.stream("party", static_cast<uint64_t>(party.party_index));
    const Dataset data = sample_party(party, party_rng);
    d0 = concat(d0, data);
    if (party.party_index != i0) d1 = concat(d1, data);
  }
  return {std::move(d0), std::move(d1)};
}

Dataset gen_linear(double beta0, double beta1, double noise_variance,
                   const GaussianLaw& feature_law, double scale_c, int n,
                   SeededRng& rng) {
  if (!(scale_c > 0.0)) {
    throw InvalidParameterError("gen_linear: scale must be > 0");
  }
  if (!(noise_variance >= 0.0)) {
    throw InvalidParameterError("gen_linear: noise variance must be >= 0");
  }
  if (n < 1) throw InvalidParameterError("gen_linear: n must be >= 1");
  Dataset data;
  data.features.resize(n, 1);
  data.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    const double x =
        scale_c * rng.gaussian(feature_law.mean, feature_law.variance);
    data.features(i, 0) = x;
    data.labels[i] = beta0 + beta1 * x + rng.gaussian(0.0, noise_variance);
  }
  return data;
}

Dataset subsample_by_attribute(const SubsampleParams& params, SeededRng& rng) {
  validate(params.base);
  if (params.t_column < 0 || params.t_column >= params.base.dim()) {
    throw InvalidParameterError("subsample_by_attribute: t_column out of range");
  }
  if (!(params.ratio >= 0.0 && params.ratio <= 1.0)) {
    throw InvalidParameterError("subsample_by_attribute: ratio must lie in [0, 1]");
  }
  if (params.n < 1) {
    throw InvalidParameterError("subsample_by_attribute: n must be >= 1");
  }
  std::vector<Eigen::Index> stratum0, stratum1;
  for (Eigen::Index i = 0; i < params.base.n(); ++i) {
    const double t = params.base.features(i, params.t_column);
    if (t == 0.0) {
      stratum0.push_back(i);
    } else if (t == 1.0) {
      stratum1.push_back(i);
    } else {
      throw InvalidParameterError(
          "subsample_by_attribute: attribute column must be binary 0/1");
    }
  }
  const auto want0 =
      static_cast<Eigen::Index>(std::floor(params.ratio * params.n));
  const Eigen::Index want1 = params.n - want0;
  if (want0 > static_cast<Eigen::Index>(stratum0.size())) {
    throw CapacityError("subsample_by_attribute: stratum T=0 has " +
                        std::to_string(stratum0.size()) + " records, need " +
                        std::to_string(want0));
  }
  if (want1 > static_cast<Eigen::Index>(stratum1.size())) {
    throw CapacityError("subsample_by_attribute: stratum T=1 has " +
                        std::to_string(stratum1.size()) + " records, need " +
                        std::to_string(want1));
  }
  // Partial Fisher-Yates: a uniform without-replacement draw per stratum.
  auto draw = [&rng](std::vector<Eigen::Index>& pool, Eigen::Index count) {
    for (Eigen::Index i = 0; i < count; ++i) {
      const auto j = i + static_cast<Eigen::Index>(rng.uniform_below(
                             static_cast<uint64_t>(pool.size() - i)));
      std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
    }
    pool.resize(static_cast<size_t>(count));
  };
  draw(stratum0, want0);
  draw(stratum1, want1);

  std::vector<int> keep_columns;
  for (int j = 0; j < params.base.dim(); ++j) {
    if (params.t_is_feature || j != params.t_column) keep_columns.push_back(j);
  }
  Dataset out;
  out.features.resize(params.n, static_cast<Eigen::Index>(keep_columns.size()));
  out.labels.resize(params.n);
  Eigen::Index row = 0;
  for (const auto* stratum : {&stratum0, &stratum1}) {
    for (const Eigen::Index src : *stratum) {
      for (size_t j = 0; j < keep_columns.size(); ++j) {
        out.features(row, static_cast<Eigen::Index>(j)) =
            params.base.features(src, keep_columns[j]);
      }
      out.labels[row] = params.base.labels[src];
      ++row;
    }
  }
  return out;
}

std::vector<Dataset> DistributionFamily::sample_environments(
    double r, SeededRng& rng) const {
  return {sample(r, rng)};
}

ExpAFamily::ExpAFamily(const ExpAParams& params) : params_(params) {
  SeededRng noise_rng = SeededRng(params.teacher_seed).stream("teacher-noise", 0);
  auto pair = gen_teacher_pair(params, noise_rng);
  teacher0_ = std::move(pair.first);
  teacher1_ = std::move(pair.second);
}

Dataset ExpAFamily::sample(double r, SeededRng& rng) const {
  if (r != 0.0 && r != 1.0) {
    throw InvalidParameterError("ExpAFamily: index must be 0 or 1");
  }
  return sample_expA(static_cast<int>(r), teacher0_, teacher1_, params_.n, rng);
}

Eigen::MatrixXd ExpAFamily::sample_probe_features(int count, SeededRng& rng) const {
  // Both indices share the feature marginal N(0, 2I).
  return gaussian_matrix(rng, 0.0, kFeatureVariance, count, feature_dim());
}

ExpBFamily::ExpBFamily(uint64_t teacher_seed, int n,
                       const std::vector<int>& teacher_dims,
                       double teacher_weight_variance)
    : n_(n) {
  SeededRng teacher_rng = SeededRng(teacher_seed).stream("teacher", 0);
  teacher_ = make_teacher(teacher_dims, teacher_weight_variance, teacher_rng);
}

Dataset ExpBFamily::sample(double r, SeededRng& rng) const {
  return sample_expB(r, teacher_, n_, rng);
}

Eigen::MatrixXd ExpBFamily::sample_probe_features(int count, SeededRng& rng) const {
  // Mixture over the index set: a fresh r per probe row.
  Eigen::MatrixXd probes(count, feature_dim());
  for (int i = 0; i < count; ++i) {
    const double mean = -1.0 + 2.0 * rng.uniform01();
    for (int j = 0; j < feature_dim(); ++j) {
      probes(i, j) = rng.gaussian(mean, kFeatureVariance);
    }
  }
  return probes;
}

MembershipFamily::MembershipFamily(std::vector<PartySpec> parties, int i0)
    : parties_(std::move(parties)), i0_(i0) {
  std::set<int> indices;
  bool i0_present = false;
  for (const auto& party : parties_) {
    if (!indices.insert(party.party_index).second) {
      throw InvalidParameterError("MembershipFamily: duplicate party index " +
                                  std::to_string(party.party_index));
    }
    i0_present |= party.party_index == i0_;
  }
  if (parties_.empty() || !i0_present) {
    throw InvalidParameterError("MembershipFamily: i0 must be a party index");
  }
}

std::vector<const PartySpec*> MembershipFamily::roster(double r) const {
  if (r != 0.0 && r != 1.0) {
    throw InvalidParameterError("MembershipFamily: index must be 0 or 1");
  }
  std::vector<const PartySpec*> active;
  for (const auto& party : parties_) {
    if (r == 1.0 && party.party_index == i0_) continue;
    active.push_back(&party);
  }
  return active;
}

Dataset MembershipFamily::sample(double r, SeededRng& rng) const {
  Dataset all;
  for (Dataset& env : sample_environments(r, rng)) all = concat(all, env);
  return all;
}

std::vector<Dataset> MembershipFamily::sample_environments(double r,
                                                           SeededRng& rng) const {
  std::vector<Dataset> environments;
  for (const PartySpec* party : roster(r)) {
    SeededRng party_rng =
        rng.stream("party", static_cast<uint64_t>(party->party_index));
    environments.push_back(sample_party(*party, party_rng));
  }
  return environments;
}

Dataset MembershipFamily::sample_inverted(double r, SeededRng& rng) const {
  Dataset all;
  for (const PartySpec* party : roster(r)) {
    PartySpec inverted = *party;
    inverted.inverted_correlation = !inverted.inverted_correlation;
    SeededRng party_rng =
        rng.stream("party-inverted", static_cast<uint64_t>(party->party_index));
    all = concat(all, sample_party(inverted, party_rng));
  }
  return all;
}

Eigen::MatrixXd MembershipFamily::sample_probe_features(int count,
                                                        SeededRng& rng) const {
  // Alternate probe rows between the two rosters, picking a uniform party
  // within the roster for each row.
  Eigen::MatrixXd probes(count, 2);
  for (int i = 0; i < count; ++i) {
    const auto active = roster(i % 2 == 0 ? 0.0 : 1.0);
    const auto pick = static_cast<size_t>(
        rng.uniform_below(static_cast<uint64_t>(active.size())));
    const double noise_variance = 0.5 + active[pick]->party_index;
    const double sign = active[pick]->inverted_correlation ? -1.0 : 1.0;
    const double x1 = rng.gaussian(0.0, 1.0);
    const double y = x1 + rng.gaussian(0.0, 1.0);
    probes(i, 0) = x1;
    probes(i, 1) = sign * y + rng.gaussian(0.0, noise_variance);
  }
  return probes;
}

LinearTheoryFamily::LinearTheoryFamily(double beta0, double beta1,
                                       double noise_variance,
                                       GaussianLaw feature_law, double scale_c,
                                       int n)
    : beta0_(beta0),
      beta1_(beta1),
      noise_variance_(noise_variance),
      feature_law_(feature_law),
      scale_c_(scale_c),
      n_(n) {
  if (!(scale_c_ > 0.0)) {
    throw InvalidParameterError("LinearTheoryFamily: scale must be > 0");
  }
}

Dataset LinearTheoryFamily::sample(double r, SeededRng& rng) const {
  if (r != 0.0 && r != 1.0) {
    throw InvalidParameterError("LinearTheoryFamily: index must be 0 or 1");
  }
  const double scale = r == 0.0 ? 1.0 : scale_c_;
  return gen_linear(beta0_, beta1_, noise_variance_, feature_law_, scale, n_, rng);
}

Eigen::MatrixXd LinearTheoryFamily::sample_probe_features(int count,
                                                          SeededRng& rng) const {
  Eigen::MatrixXd probes(count, 1);
  for (int i = 0; i < count; ++i) {
    const double scale = i % 2 == 0 ? 1.0 : scale_c_;
    probes(i, 0) = scale * rng.gaussian(feature_law_.mean, feature_law_.variance);
  }
  return probes;
}

}  // namespace distinf
