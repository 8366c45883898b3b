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

#ifndef DISTINF_FAMILIES_H_
#define DISTINF_FAMILIES_H_

#include <memory>
#include <utility>
#include <vector>

#include "distinf/dataset.h"
#include "distinf/game.h"
#include "distinf/mlp.h"
#include "distinf/rng.h"

namespace distinf {

// A one-dimensional Gaussian feature law; the second parameter is a variance.
struct GaussianLaw {
  double mean = 0.0;
  double variance = 1.0;
};

// Teacher-pair construction: two networks sharing an architecture, the second
// differing from the first by independent N(0, weight_noise_std^2) on every
// weight and bias.
struct ExpAParams {
  double weight_noise_std = 0.05;
  uint64_t teacher_seed = 1;
  int n = 2048;  // records per sampled dataset
  std::vector<int> teacher_dims = {4, 8, 8, 1};
  double teacher_weight_variance = 1.0;
};

// One party's data in the membership setting, following the causal chain
// X1 -> Y -> X2 with Var(X2 | Y) = 0.5 + party_index. The inverted flag flips
// the sign of Y's contribution to X2.
struct PartySpec {
  int party_index = 0;
  int records_per_party = 512;
  bool inverted_correlation = false;
};

// Conditional subsampling of a base dataset on a binary attribute column:
// the output hits Pr(T = 0) == floor(ratio * n) / n exactly via stratified
// without-replacement draws. When t_is_feature is false the attribute column
// is dropped from the output features.
struct SubsampleParams {
  Dataset base;
  int t_column = 0;
  double ratio = 0.5;  // requested Pr(T = 0)
  bool t_is_feature = true;
  int n = 0;
};

// A randomly generated teacher network with the output layer affinely
// rescaled so labels have mean 0 and variance 1 under X ~ N(0, 2I). The
// rescaling keeps training-MSE targets comparable across teachers.
MlpModel make_teacher(const std::vector<int>& layer_dims, double weight_variance,
                      SeededRng& rng);

// (M0, M1): M0 from params.teacher_seed, M1 = M0 plus independent
// N(0, weight_noise_std^2) on every parameter, noise drawn from `rng`.
std::pair<MlpModel, MlpModel> gen_teacher_pair(const ExpAParams& params,
                                               SeededRng& rng);

// Features i.i.d. N4(0, 2 I4); labels computed exactly by teacher b.
Dataset sample_expA(int b, const MlpModel& teacher0, const MlpModel& teacher1,
                    int n, SeededRng& rng);

// Features N4((-1 + 2 r) * ones, 2 I4) for r in [0, 1]; labels by the single
// shared teacher, so E[Y | X] is identical across r.
Dataset sample_expB(double r, const MlpModel& teacher, int n, SeededRng& rng);

// One party's records: X1 ~ N(0,1), Y = X1 + N(0,1), X2 = +/-Y + N(0, 0.5+i).
Dataset sample_party(const PartySpec& spec, SeededRng& rng);

// D0 = union of all parties' datasets, D1 = the same union excluding party
// i0; shared parties contribute identical rows to both.
std::pair<Dataset, Dataset> build_membership_datasets(
    const std::vector<PartySpec>& parties, int i0, SeededRng& rng);

// X ~ feature_law scaled by c, Y = beta0 + beta1 * X + N(0, noise_variance).
Dataset gen_linear(double beta0, double beta1, double noise_variance,
                   const GaussianLaw& feature_law, double scale_c, int n,
                   SeededRng& rng);

Dataset subsample_by_attribute(const SubsampleParams& params, SeededRng& rng);

enum class FamilyKind { kExpA, kExpB, kMembership, kLinearTheory, kSubsampled };

// A seeded generator indexed by r: the training-distribution side of the
// inference game. Implementations are immutable after construction and safe
// to share across threads.
class DistributionFamily {
 public:
  virtual ~DistributionFamily() = default;
  virtual FamilyKind kind() const = 0;
  virtual IndexSet index_set() const = 0;
  virtual int feature_dim() const = 0;
  virtual Dataset sample(double r, SeededRng& rng) const = 0;
  // Per-environment pieces of sample(r); concatenating them reproduces
  // sample(r) row for row. Families without environment structure return the
  // whole dataset as a single environment.
  virtual std::vector<Dataset> sample_environments(double r, SeededRng& rng) const;
  // Probe inputs for black-box attacks, drawn from the equal mixture of the
  // family's feature marginals.
  virtual Eigen::MatrixXd sample_probe_features(int count, SeededRng& rng) const = 0;
};

class ExpAFamily : public DistributionFamily {
 public:
  explicit ExpAFamily(const ExpAParams& params);

  FamilyKind kind() const override { return FamilyKind::kExpA; }
  IndexSet index_set() const override { return IndexSet::kBinary01; }
  int feature_dim() const override { return teacher0_.input_dim(); }
  Dataset sample(double r, SeededRng& rng) const override;
  Eigen::MatrixXd sample_probe_features(int count, SeededRng& rng) const override;

  const ExpAParams& params() const { return params_; }
  const MlpModel& teacher(int b) const { return b == 0 ? teacher0_ : teacher1_; }

 private:
  ExpAParams params_;
  MlpModel teacher0_;
  MlpModel teacher1_;
};

class ExpBFamily : public DistributionFamily {
 public:
  // The teacher is generated from teacher_seed with the same construction as
  // the first teacher of ExpAFamily.
  ExpBFamily(uint64_t teacher_seed, int n,
             const std::vector<int>& teacher_dims = {4, 8, 8, 1},
             double teacher_weight_variance = 1.0);

  FamilyKind kind() const override { return FamilyKind::kExpB; }
  IndexSet index_set() const override { return IndexSet::kInterval01; }
  int feature_dim() const override { return teacher_.input_dim(); }
  Dataset sample(double r, SeededRng& rng) const override;
  Eigen::MatrixXd sample_probe_features(int count, SeededRng& rng) const override;

  int records_per_sample() const { return n_; }
  void set_records_per_sample(int n) { n_ = n; }
  const MlpModel& teacher() const { return teacher_; }

 private:
  MlpModel teacher_;
  int n_;
};

class MembershipFamily : public DistributionFamily {
 public:
  // r = 0 samples the union of all parties, r = 1 the union without party
  // i0. Party indices must be unique and i0 must be one of them.
  MembershipFamily(std::vector<PartySpec> parties, int i0);

  FamilyKind kind() const override { return FamilyKind::kMembership; }
  IndexSet index_set() const override { return IndexSet::kBinary01; }
  int feature_dim() const override { return 2; }
  Dataset sample(double r, SeededRng& rng) const override;
  std::vector<Dataset> sample_environments(double r, SeededRng& rng) const override;
  Eigen::MatrixXd sample_probe_features(int count, SeededRng& rng) const override;

  // Fresh draws from the r-indexed distribution with the spurious
  // correlation between X2 and Y inverted (the out-of-distribution test set).
  Dataset sample_inverted(double r, SeededRng& rng) const;

  const std::vector<PartySpec>& parties() const { return parties_; }
  int i0() const { return i0_; }

 private:
  std::vector<const PartySpec*> roster(double r) const;
  std::vector<PartySpec> parties_;
  int i0_;
};

// Binary linear-regression theory family: r = 0 draws features at scale 1,
// r = 1 at scale c.
class LinearTheoryFamily : public DistributionFamily {
 public:
  LinearTheoryFamily(double beta0, double beta1, double noise_variance,
                     GaussianLaw feature_law, double scale_c, int n);

  FamilyKind kind() const override { return FamilyKind::kLinearTheory; }
  IndexSet index_set() const override { return IndexSet::kBinary01; }
  int feature_dim() const override { return 1; }
  Dataset sample(double r, SeededRng& rng) const override;
  Eigen::MatrixXd sample_probe_features(int count, SeededRng& rng) const override;

 private:
  double beta0_, beta1_, noise_variance_;
  GaussianLaw feature_law_;
  double scale_c_;
  int n_;
};

}  // namespace distinf

#endif  // DISTINF_FAMILIES_H_
