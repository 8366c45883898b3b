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

#include "distinf/experiments.h"

#include <algorithm>
#include <cmath>

#include "distinf/error.h"
#include "distinf/thread_pool.h"

namespace distinf {
namespace {

const char* mode_name(AttackMode mode) {
  return mode == AttackMode::kWhitebox ? "whitebox" : "blackbox";
}

const char* task_name(AttackTask task) {
  return task == AttackTask::kClassify ? "classify" : "regress";
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid]
                                : 0.5 * (values[mid - 1] + values[mid]);
}

TrainerConfig base_trainer(const ExperimentConfig& config) {
  TrainerConfig trainer;
  trainer.layer_dims = config.model_dims;
  trainer.init_weight_variance = config.init_weight_variance;
  trainer.opts.learning_rate = config.learning_rate;
  trainer.opts.max_epochs = config.max_epochs;
  trainer.opts.batch_size = config.batch_size;
  trainer.opts.target_train_mse = config.target_train_mse;
  return trainer;
}

// Attack rows (metric + advantage) for one sweep point.
void append_attack_rows(std::vector<ResultRow>& rows, const ExperimentConfig& config,
                        const std::string& variant, const std::string& sweep_param,
                        double sweep_value, const DistributionFamily& family,
                        const TrainerConfig& trainer, const SeededRng& point_rng,
                        int n_attacks) {
  const auto corpora =
      build_shadow_corpora_dual(family, trainer, config.shadow_count, config.task,
                                point_rng.stream("corpus", 0), config.threads);
  for (AttackMode mode : config.modes) {
    const ShadowCorpus& corpus =
        mode == AttackMode::kWhitebox ? corpora.first : corpora.second;
    const MetaModel meta = train_meta(corpus);
    const AttackReport report =
        evaluate_attack(meta, family, trainer, n_attacks,
                        point_rng.stream("game", 0), config.threads);
    ResultRow row;
    row.experiment = config.name;
    row.variant = variant;
    row.sweep_param = sweep_param;
    row.sweep_value = sweep_value;
    row.attack_mode = mode_name(mode);
    row.task = task_name(config.task);
    row.metric = config.task == AttackTask::kClassify ? "accuracy" : "mae";
    row.value = report.value;
    row.ci95 = report.ci95_halfwidth;
    row.n = report.n_attacks;
    rows.push_back(row);

    row.metric = "advantage";
    row.value = report.advantage.advantage;
    row.ci95 = report.advantage.ci95_halfwidth;
    rows.push_back(row);
  }
}

}  // namespace

std::vector<double> default_epsilon_grid() { return {0.0, 0.01, 0.02, 0.05, 0.1}; }
std::vector<double> default_target_mse_grid() { return {0.05, 0.1, 0.2, 0.5, 1.0}; }
std::vector<double> default_size_grid() { return {512.0, 1024.0, 2048.0}; }

void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << "experiment,variant,sweep_param,sweep_value,attack_mode,task,metric,"
         "value,ci95,n\n";
  for (const auto& row : rows) {
    out << row.experiment << ',' << row.variant << ',' << row.sweep_param << ','
        << format_double(row.sweep_value) << ',' << row.attack_mode << ','
        << row.task << ',' << row.metric << ',' << format_double(row.value)
        << ',' << format_double(row.ci95) << ',' << row.n << '\n';
  }
}

std::vector<ResultRow> run_expA(const ExperimentConfig& config) {
  const bool mse_sweep = config.name == "expA_mse_sweep";
  const std::vector<double> sweep =
      !config.sweep.empty() ? config.sweep
      : mse_sweep           ? default_target_mse_grid()
                            : default_epsilon_grid();
  const SeededRng master(config.master_seed);
  std::vector<ResultRow> rows;
  for (size_t i = 0; i < sweep.size(); ++i) {
    ExpAParams params;
    params.weight_noise_std = mse_sweep ? config.epsilon : sweep[i];
    params.teacher_seed = config.master_seed;
    params.n = config.dataset_size;
    params.teacher_dims = config.teacher_dims;
    params.teacher_weight_variance = config.teacher_weight_variance;
    const ExpAFamily family(params);

    TrainerConfig trainer = base_trainer(config);
    if (mse_sweep) trainer.opts.target_train_mse = sweep[i];

    const SeededRng point_rng = master.stream(config.name, static_cast<uint64_t>(i));
    append_attack_rows(rows, config, "target",
                       mse_sweep ? "target_mse" : "epsilon", sweep[i], family,
                       trainer, point_rng, config.trials);
  }
  return rows;
}

std::vector<ResultRow> run_expB(const ExperimentConfig& config) {
  const std::vector<double> sweep =
      !config.sweep.empty() ? config.sweep : default_target_mse_grid();
  const SeededRng master(config.master_seed);
  const ExpBFamily family(config.master_seed, config.dataset_size,
                          config.teacher_dims, config.teacher_weight_variance);
  std::vector<ResultRow> rows;
  for (size_t i = 0; i < sweep.size(); ++i) {
    TrainerConfig trainer = base_trainer(config);
    trainer.opts.target_train_mse = sweep[i];
    const SeededRng point_rng = master.stream(config.name, static_cast<uint64_t>(i));
    append_attack_rows(rows, config, "target", "target_mse", sweep[i], family,
                       trainer, point_rng, config.trials);
  }
  return rows;
}

std::vector<ResultRow> run_expC(const ExperimentConfig& config) {
  const std::vector<double> sweep =
      !config.sweep.empty() ? config.sweep : default_size_grid();
  const SeededRng master(config.master_seed);
  std::vector<ResultRow> rows;
  for (size_t i = 0; i < sweep.size(); ++i) {
    const int size = static_cast<int>(sweep[i]);
    if (size < 1) throw InvalidParameterError("run_expC: sizes must be >= 1");
    const ExpBFamily family(config.master_seed, size, config.teacher_dims,
                            config.teacher_weight_variance);
    const TrainerConfig trainer = base_trainer(config);
    const SeededRng point_rng = master.stream(config.name, static_cast<uint64_t>(i));
    append_attack_rows(rows, config, "target", "dataset_size", sweep[i], family,
                       trainer, point_rng, config.trials);
  }
  return rows;
}

std::vector<ResultRow> run_membership(const ExperimentConfig& config) {
  std::vector<PartySpec> parties;
  for (int i = 0; i < config.parties; ++i) {
    parties.push_back(PartySpec{i, config.records_per_party, false});
  }
  const MembershipFamily family(parties, config.i0);
  const SeededRng master(config.master_seed);

  struct Variant {
    const char* name;
    std::vector<int> input_columns;
    bool irm;
  };
  // One hidden layer with two neurons for every variant.
  const std::vector<Variant> variants = {
      {"erm_full", {}, false}, {"erm_causal", {0}, false}, {"irm", {}, true}};

  std::vector<ResultRow> rows;
  for (size_t v = 0; v < variants.size(); ++v) {
    const Variant& variant = variants[v];
    TrainerConfig trainer;
    trainer.layer_dims = {variant.input_columns.empty() ? 2 : 1, 2, 1};
    trainer.init_weight_variance = config.init_weight_variance;
    trainer.opts.learning_rate = config.membership_learning_rate;
    trainer.opts.max_epochs = config.membership_max_epochs;
    trainer.opts.batch_size = config.batch_size;
    trainer.input_columns = variant.input_columns;
    trainer.irm = variant.irm;
    trainer.irm_penalty_weight = config.irm_penalty_weight;
    trainer.irm_warmup_epochs = config.irm_warmup_epochs;
    trainer.irm_warmup_penalty_weight = config.irm_warmup_penalty_weight;

    const SeededRng variant_rng = master.stream("membership", static_cast<uint64_t>(v));

    // Model-quality medians over fresh target models, half per index.
    std::vector<double> validation_mse(static_cast<size_t>(config.targets_per_variant));
    std::vector<double> inverted_mse(static_cast<size_t>(config.targets_per_variant));
    parallel_for(config.targets_per_variant, config.threads, [&](int j) {
      SeededRng model_rng = variant_rng.stream("quality", static_cast<uint64_t>(j));
      const double r = static_cast<double>(j % 2);
      const MlpModel model = train_target(family, trainer, r, model_rng);
      SeededRng val_rng = model_rng.stream("validation", 0);
      SeededRng test_rng = model_rng.stream("inverted-test", 0);
      Dataset validation = family.sample(r, val_rng);
      Dataset inverted = family.sample_inverted(r, test_rng);
      if (!variant.input_columns.empty()) {
        validation = select_columns(validation, variant.input_columns);
        inverted = select_columns(inverted, variant.input_columns);
      }
      validation_mse[static_cast<size_t>(j)] = mse(model, validation);
      inverted_mse[static_cast<size_t>(j)] = mse(model, inverted);
    });
    auto quality_row = [&](const char* metric, const std::vector<double>& values) {
      ResultRow row;
      row.experiment = config.name.empty() ? "membership" : config.name;
      row.variant = variant.name;
      row.sweep_param = "i0";
      row.sweep_value = config.i0;
      row.attack_mode = "none";
      row.task = "regress";
      row.metric = metric;
      row.value = median(values);
      row.ci95 = 0.0;
      row.n = config.targets_per_variant;
      rows.push_back(row);
    };
    quality_row("validation_mse_median", validation_mse);
    quality_row("inverted_test_mse_median", inverted_mse);

    ExperimentConfig attack_config = config;
    attack_config.name = config.name.empty() ? "membership" : config.name;
    attack_config.task = AttackTask::kClassify;
    append_attack_rows(rows, attack_config, variant.name, "i0", config.i0, family,
                       trainer, variant_rng.stream("attack", 0),
                       config.membership_attacks);
  }
  return rows;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  if (config.name == "expA_eps_sweep" || config.name == "expA_mse_sweep") {
    return run_expA(config);
  }
  if (config.name == "expB_mse_sweep") return run_expB(config);
  if (config.name == "expC_size_sweep") return run_expC(config);
  if (config.name == "membership") return run_membership(config);
  throw InvalidConfigurationError("run_experiment: unknown experiment '" +
                                  config.name + "'");
}

}  // namespace distinf
