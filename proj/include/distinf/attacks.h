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

#ifndef DISTINF_ATTACKS_H_
#define DISTINF_ATTACKS_H_

#include <istream>
#include <ostream>
#include <utility>
#include <vector>

#include "distinf/families.h"
#include "distinf/game.h"
#include "distinf/train.h"

namespace distinf {

enum class AttackMode { kWhitebox, kBlackbox };
enum class AttackTask { kClassify, kRegress };

// Everything needed to train one target (or shadow) model on a sample from a
// family: architecture, initialization scale, optimizer settings, an optional
// feature subset, and whether training is invariant-risk over the family's
// environments instead of pooled ERM.
struct TrainerConfig {
  std::vector<int> layer_dims;
  Activation activation = Activation::kRelu;
  double init_weight_variance = 0.1;
  TrainOptions opts;
  std::vector<int> input_columns;  // empty = all family features
  bool irm = false;
  double irm_penalty_weight = 100.0;
  int irm_warmup_epochs = 50;
  double irm_warmup_penalty_weight = 1.0;
};

// Samples a dataset from the family at index r and trains a model per the
// config; all randomness (data, init, batching) is derived from `rng`.
MlpModel train_target(const DistributionFamily& family, const TrainerConfig& trainer,
                      double r, SeededRng& rng);

struct ShadowRecord {
  Eigen::VectorXd attack_features;
  double r = 0.0;
};

// Labeled attack-training records plus the fixed probe inputs black-box
// records were produced with, and the shadow architecture for validation.
struct ShadowCorpus {
  std::vector<ShadowRecord> records;
  AttackMode mode = AttackMode::kWhitebox;
  AttackTask task = AttackTask::kClassify;
  Eigen::MatrixXd probe_features;  // probe_count x family feature dim
  std::vector<int> model_dims;
  Activation activation = Activation::kRelu;
  std::vector<int> input_columns;
};

inline constexpr int kProbeCount = 64;

// k shadow models trained with the exact target configuration. Classification
// alternates r over {0, 1} (floor(k/2) each for even k); regression places r
// on the uniform grid {0, 1/(k-1), ..., 1}. White-box features are the
// canonicalized flattened parameters; black-box features are model outputs on
// the corpus probe set. Per-shadow streams are rng.stream("shadow", j).
ShadowCorpus build_shadow_corpus(const DistributionFamily& family,
                                 const TrainerConfig& trainer, int k,
                                 AttackMode mode, AttackTask task,
                                 const SeededRng& rng, int threads = 1);

// Both corpora from one set of shadow models (identical to building each mode
// separately with the same rng, at half the training cost).
std::pair<ShadowCorpus, ShadowCorpus> build_shadow_corpora_dual(
    const DistributionFamily& family, const TrainerConfig& trainer, int k,
    AttackTask task, const SeededRng& rng, int threads = 1);

// Linear meta-model over standardized attack features: a ridge-regularized
// logistic classifier for the classification task (on features augmented with
// their squares, so purely second-moment leakage stays detectable) and a
// ridge regressor with predictions clamped to [0, 1] for the regression task.
struct MetaModel {
  AttackMode mode = AttackMode::kWhitebox;
  AttackTask task = AttackTask::kClassify;
  bool quadratic_features = false;
  Eigen::VectorXd feature_mean;   // over the (possibly augmented) features
  Eigen::VectorXd feature_scale;
  Eigen::VectorXd coefficients;
  double intercept = 0.0;
  Eigen::MatrixXd probe_features;
  std::vector<int> model_dims;
  Activation activation = Activation::kRelu;
  std::vector<int> input_columns;
};

// Fits the meta-model on the corpus; standardization statistics come from the
// corpus only. A classification corpus lacking one of the two classes raises
// DegenerateCorpusError.
MetaModel train_meta(const ShadowCorpus& corpus);

// The guess r-hat = H(M): 0/1 for classification (ties toward 0), a value in
// [0, 1] for regression. The target architecture must match the shadows'.
double attack(const MetaModel& meta, const MlpModel& target);

struct AttackReport {
  AttackTask task = AttackTask::kClassify;
  double value = 0.0;           // accuracy (classify) or mean absolute error
  double ci95_halfwidth = 0.0;
  int n_attacks = 0;
  AdvantageReport advantage;    // absolute-distance game summary
};

// Plays the inference game with this meta-model as the adversary: per trial a
// fresh r, dataset, and target model. Classification reports accuracy,
// regression the mean absolute error, both with 95% confidence half-widths.
AttackReport evaluate_attack(const MetaModel& meta, const DistributionFamily& family,
                             const TrainerConfig& trainer, int n_attacks,
                             const SeededRng& rng, int threads = 1);

// Corpus export: CSV with columns shadow_id, r, f0..fK.
void write_corpus_csv(const ShadowCorpus& corpus, std::ostream& out);

// Meta-model text serialization in the MLP style (header line, then one line
// per parameter block, 17 significant digits).
void save_meta(const MetaModel& meta, std::ostream& out);
MetaModel load_meta(std::istream& in);

}  // namespace distinf

#endif  // DISTINF_ATTACKS_H_
