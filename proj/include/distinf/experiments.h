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

#ifndef DISTINF_EXPERIMENTS_H_
#define DISTINF_EXPERIMENTS_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "distinf/attacks.h"

namespace distinf {

// One fully reproducible experiment run: every field below, together with the
// library defaults, determines all outputs bit for bit.
struct ExperimentConfig {
  std::string name;  // expA_eps_sweep, expA_mse_sweep, expB_mse_sweep,
                     // expC_size_sweep, membership
  std::vector<double> sweep;  // empty = the experiment's default grid
  AttackTask task = AttackTask::kClassify;
  std::vector<AttackMode> modes = {AttackMode::kWhitebox, AttackMode::kBlackbox};
  int shadow_count = 256;
  int trials = 200;  // game trials per sweep point
  uint64_t master_seed = 1;
  int threads = 1;

  // Target/shadow model and its training.
  int dataset_size = 2048;
  double epsilon = 0.05;  // fixed perturbation for the early-stopping variant
  std::vector<int> model_dims = {4, 16, 1};
  double init_weight_variance = 0.1;
  double learning_rate = 0.02;
  int max_epochs = 60;
  int batch_size = 64;
  std::optional<double> target_train_mse;  // fixed early-stopping target

  // Teacher networks behind the synthetic label mechanisms.
  std::vector<int> teacher_dims = {4, 8, 8, 1};
  double teacher_weight_variance = 1.0;

  // Membership experiment.
  int parties = 4;
  int records_per_party = 512;
  int i0 = 3;
  int targets_per_variant = 256;
  int membership_attacks = 100;
  int membership_max_epochs = 300;
  double membership_learning_rate = 0.02;
  double irm_penalty_weight = 100.0;
  int irm_warmup_epochs = 50;
  double irm_warmup_penalty_weight = 1.0;
};

// Default sweep grids.
std::vector<double> default_epsilon_grid();      // {0, 0.01, 0.02, 0.05, 0.1}
std::vector<double> default_target_mse_grid();   // {0.05, 0.1, 0.2, 0.5, 1.0}
std::vector<double> default_size_grid();         // {512, 1024, 2048}

// One tidy result record; the CSV schema is
// experiment,variant,sweep_param,sweep_value,attack_mode,task,metric,value,ci95,n.
struct ResultRow {
  std::string experiment;
  std::string variant;
  std::string sweep_param;
  double sweep_value = 0.0;
  std::string attack_mode;
  std::string task;
  std::string metric;
  double value = 0.0;
  double ci95 = 0.0;
  int n = 0;
};

void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out);

// Teacher-pair perturbation sweep (or its early-stopping variant when name is
// expA_mse_sweep): classification attacks per epsilon resp. target MSE.
std::vector<ResultRow> run_expA(const ExperimentConfig& config);

// Mean-shift family with a shared teacher, early stopping swept over target
// MSE; regression attacks by default.
std::vector<ResultRow> run_expB(const ExperimentConfig& config);

// Mean-shift family swept over the training-set size {512, 1024, 2048}.
std::vector<ResultRow> run_expC(const ExperimentConfig& config);

// The party-membership experiment: per model variant (erm_full, erm_causal,
// irm) validation/inverted-test MSE medians and classification attacks.
std::vector<ResultRow> run_membership(const ExperimentConfig& config);

// Dispatch on config.name.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

}  // namespace distinf

#endif  // DISTINF_EXPERIMENTS_H_
