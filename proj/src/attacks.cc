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

#include "distinf/attacks.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include <Eigen/Cholesky>

#include "distinf/error.h"
#include "distinf/thread_pool.h"

namespace distinf {
namespace {

constexpr double kLogisticRidge = 1.0;
constexpr double kRegressionRidge = 1.0;

int effective_input_dim(const DistributionFamily& family,
                        const TrainerConfig& trainer) {
  return trainer.input_columns.empty()
             ? family.feature_dim()
             : static_cast<int>(trainer.input_columns.size());
}

void check_trainer(const DistributionFamily& family, const TrainerConfig& trainer) {
  if (trainer.layer_dims.size() < 2) {
    throw InvalidConfigurationError("trainer: missing layer dims");
  }
  for (int column : trainer.input_columns) {
    if (column < 0 || column >= family.feature_dim()) {
      throw InvalidConfigurationError("trainer: input column " +
                                      std::to_string(column) +
                                      " outside family features");
    }
  }
  if (trainer.layer_dims.front() != effective_input_dim(family, trainer)) {
    throw InvalidConfigurationError(
        "trainer: first layer dim " + std::to_string(trainer.layer_dims.front()) +
        " does not match input dimension " +
        std::to_string(effective_input_dim(family, trainer)));
  }
  if (trainer.layer_dims.back() != 1) {
    throw InvalidConfigurationError("trainer: output dimension must be 1");
  }
}

Dataset slice_inputs(const Dataset& data, const std::vector<int>& columns) {
  return columns.empty() ? data : select_columns(data, columns);
}

Eigen::MatrixXd slice_probe(const Eigen::MatrixXd& probe,
                            const std::vector<int>& columns) {
  if (columns.empty()) return probe;
  Eigen::MatrixXd out(probe.rows(), static_cast<Eigen::Index>(columns.size()));
  for (size_t j = 0; j < columns.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = probe.col(columns[j]);
  }
  return out;
}

Eigen::VectorXd blackbox_features(const MlpModel& model,
                                  const Eigen::MatrixXd& probe,
                                  const std::vector<int>& columns) {
  return predict_rows(model, slice_probe(probe, columns));
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Raw attack features -> (optionally) square-augmented feature vector.
Eigen::VectorXd augment(const Eigen::VectorXd& f, bool quadratic) {
  if (!quadratic) return f;
  Eigen::VectorXd out(2 * f.size());
  out.head(f.size()) = f;
  out.tail(f.size()) = f.array().square();
  return out;
}

Eigen::VectorXd standardize(const MetaModel& meta, const Eigen::VectorXd& f) {
  return (augment(f, meta.quadratic_features) - meta.feature_mean)
      .cwiseQuotient(meta.feature_scale);
}

void emit_vector(std::ostream& out, const Eigen::VectorXd& v) {
  char buf[64];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), i == 0 ? "%.17g" : " %.17g", v[i]);
    out << buf;
  }
  out << '\n';
}

Eigen::VectorXd read_vector_line(std::istream& in, Eigen::Index count,
                                 const char* what) {
  std::string line;
  if (!std::getline(in, line)) {
    throw InvalidParameterError(std::string("load_meta: missing ") + what);
  }
  std::istringstream ls(line);
  Eigen::VectorXd values(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    if (!(ls >> values[i])) {
      throw InvalidParameterError(std::string("load_meta: truncated ") + what);
    }
  }
  return values;
}

}  // namespace

MlpModel train_target(const DistributionFamily& family, const TrainerConfig& trainer,
                      double r, SeededRng& rng) {
  check_trainer(family, trainer);
  SeededRng data_rng = rng.stream("data", 0);
  SeededRng init_rng = rng.stream("init", 0);
  TrainOptions opts = trainer.opts;
  opts.seed = rng.stream("batch", 0);
  MlpModel init = random_init(trainer.layer_dims, trainer.init_weight_variance,
                              init_rng, trainer.activation);
  if (trainer.irm) {
    IrmSpec spec;
    spec.phi = std::move(init);
    spec.penalty_weight = trainer.irm_penalty_weight;
    spec.warmup_epochs = trainer.irm_warmup_epochs;
    spec.warmup_penalty_weight = trainer.irm_warmup_penalty_weight;
    for (Dataset& env : family.sample_environments(r, data_rng)) {
      spec.environments.push_back(slice_inputs(env, trainer.input_columns));
    }
    return train_irm(spec, opts).model;
  }
  const Dataset data = slice_inputs(family.sample(r, data_rng), trainer.input_columns);
  return train_erm(std::move(init), data, opts).model;
}

std::pair<ShadowCorpus, ShadowCorpus> build_shadow_corpora_dual(
    const DistributionFamily& family, const TrainerConfig& trainer, int k,
    AttackTask task, const SeededRng& rng, int threads) {
  if (k < 2) {
    throw InvalidParameterError("build_shadow_corpus: need at least 2 shadows");
  }
  check_trainer(family, trainer);
  if (task == AttackTask::kRegress && family.index_set() != IndexSet::kInterval01) {
    throw InvalidConfigurationError(
        "build_shadow_corpus: regression needs an interval index set");
  }

  ShadowCorpus whitebox;
  whitebox.mode = AttackMode::kWhitebox;
  whitebox.task = task;
  whitebox.model_dims = trainer.layer_dims;
  whitebox.activation = trainer.activation;
  whitebox.input_columns = trainer.input_columns;
  SeededRng probe_rng = rng.stream("probe", 0);
  whitebox.probe_features = family.sample_probe_features(kProbeCount, probe_rng);
  whitebox.records.resize(static_cast<size_t>(k));

  ShadowCorpus blackbox = whitebox;
  blackbox.mode = AttackMode::kBlackbox;

  parallel_for(k, threads, [&](int j) {
    const double r = task == AttackTask::kClassify
                         ? static_cast<double>(j % 2)
                         : static_cast<double>(j) / static_cast<double>(k - 1);
    SeededRng shadow_rng = rng.stream("shadow", static_cast<uint64_t>(j));
    const MlpModel model = train_target(family, trainer, r, shadow_rng);
    whitebox.records[static_cast<size_t>(j)] =
        ShadowRecord{flatten_params(model, /*canonicalize=*/true), r};
    blackbox.records[static_cast<size_t>(j)] = ShadowRecord{
        blackbox_features(model, blackbox.probe_features, trainer.input_columns), r};
  });
  return {std::move(whitebox), std::move(blackbox)};
}

ShadowCorpus build_shadow_corpus(const DistributionFamily& family,
                                 const TrainerConfig& trainer, int k,
                                 AttackMode mode, AttackTask task,
                                 const SeededRng& rng, int threads) {
  auto corpora = build_shadow_corpora_dual(family, trainer, k, task, rng, threads);
  return mode == AttackMode::kWhitebox ? std::move(corpora.first)
                                       : std::move(corpora.second);
}

MetaModel train_meta(const ShadowCorpus& corpus) {
  const auto n = static_cast<Eigen::Index>(corpus.records.size());
  if (n == 0) throw DegenerateCorpusError("train_meta: empty corpus");
  const Eigen::Index raw_dim = corpus.records.front().attack_features.size();
  for (const auto& record : corpus.records) {
    if (record.attack_features.size() != raw_dim) {
      throw InvalidParameterError("train_meta: inconsistent feature lengths");
    }
  }

  MetaModel meta;
  meta.mode = corpus.mode;
  meta.task = corpus.task;
  meta.quadratic_features = corpus.task == AttackTask::kClassify;
  meta.probe_features = corpus.probe_features;
  meta.model_dims = corpus.model_dims;
  meta.activation = corpus.activation;
  meta.input_columns = corpus.input_columns;

  const Eigen::Index dim = meta.quadratic_features ? 2 * raw_dim : raw_dim;
  Eigen::MatrixXd features(n, dim);
  Eigen::VectorXd labels(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    features.row(i) =
        augment(corpus.records[static_cast<size_t>(i)].attack_features,
                meta.quadratic_features)
            .transpose();
    labels[i] = corpus.records[static_cast<size_t>(i)].r;
  }

  meta.feature_mean = features.colwise().mean();
  Eigen::MatrixXd centered = features.rowwise() - meta.feature_mean.transpose();
  meta.feature_scale =
      (centered.array().square().colwise().sum() / static_cast<double>(n))
          .sqrt()
          .matrix();
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (meta.feature_scale[j] < 1e-12) meta.feature_scale[j] = 1.0;
  }
  const Eigen::MatrixXd z =
      centered.array().rowwise() / meta.feature_scale.transpose().array();

  if (corpus.task == AttackTask::kClassify) {
    const auto positives = (labels.array() == 1.0).count();
    if (positives == 0 || positives == n) {
      throw DegenerateCorpusError(
          "train_meta: classification corpus holds a single class");
    }
    // Ridge-penalized logistic regression by Newton iteration; the intercept
    // is left unpenalized.
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(dim + 1);
    Eigen::MatrixXd design(n, dim + 1);
    design.leftCols(dim) = z;
    design.col(dim).setOnes();
    Eigen::VectorXd penalty_diag = Eigen::VectorXd::Constant(dim + 1, 2.0 * kLogisticRidge);
    penalty_diag[dim] = 0.0;
    for (int iteration = 0; iteration < 100; ++iteration) {
      const Eigen::VectorXd score = design * theta;
      const Eigen::VectorXd prob = score.unaryExpr([](double s) { return sigmoid(s); });
      const Eigen::VectorXd grad =
          design.transpose() * (prob - labels) + penalty_diag.cwiseProduct(theta);
      const Eigen::VectorXd weight = prob.array() * (1.0 - prob.array()) + 1e-10;
      Eigen::MatrixXd hessian =
          design.transpose() * weight.asDiagonal() * design;
      hessian.diagonal() += penalty_diag;
      const Eigen::VectorXd step = hessian.ldlt().solve(grad);
      theta -= step;
      if (step.lpNorm<Eigen::Infinity>() < 1e-10) break;
    }
    meta.coefficients = theta.head(dim);
    meta.intercept = theta[dim];
  } else {
    // Ridge regression on centered labels; predictions are clamped in attack().
    const double label_mean = labels.mean();
    Eigen::MatrixXd gram = z.transpose() * z;
    gram.diagonal().array() += kRegressionRidge;
    meta.coefficients =
        gram.ldlt().solve(z.transpose() * (labels.array() - label_mean).matrix());
    meta.intercept = label_mean;
  }
  return meta;
}

double attack(const MetaModel& meta, const MlpModel& target) {
  if (target.layer_dims != meta.model_dims) {
    throw InvalidConfigurationError(
        "attack: target architecture differs from the shadow architecture");
  }
  const Eigen::VectorXd raw =
      meta.mode == AttackMode::kWhitebox
          ? flatten_params(target, /*canonicalize=*/true)
          : blackbox_features(target, meta.probe_features, meta.input_columns);
  const double score = meta.coefficients.dot(standardize(meta, raw)) + meta.intercept;
  if (meta.task == AttackTask::kClassify) {
    return score > 0.0 ? 1.0 : 0.0;
  }
  return std::clamp(score, 0.0, 1.0);
}

AttackReport evaluate_attack(const MetaModel& meta, const DistributionFamily& family,
                             const TrainerConfig& trainer, int n_attacks,
                             const SeededRng& rng, int threads) {
  if (n_attacks < 1) {
    throw InvalidParameterError("evaluate_attack: n_attacks must be >= 1");
  }
  check_trainer(family, trainer);
  if (meta.model_dims != trainer.layer_dims ||
      meta.input_columns != trainer.input_columns) {
    throw InvalidConfigurationError(
        "evaluate_attack: adversary was fitted for a different trainer");
  }
  if (meta.mode == AttackMode::kBlackbox &&
      meta.probe_features.cols() != family.feature_dim()) {
    throw InvalidConfigurationError(
        "evaluate_attack: probe set does not match the family's features");
  }
  const IndexSet index_set = meta.task == AttackTask::kClassify
                                 ? IndexSet::kBinary01
                                 : IndexSet::kInterval01;
  if (index_set == IndexSet::kInterval01 &&
      family.index_set() != IndexSet::kInterval01) {
    throw InvalidConfigurationError(
        "evaluate_attack: regression adversary on a binary family");
  }
  const TargetFactory factory = [&](double r, SeededRng& trial_rng) {
    return train_target(family, trainer, r, trial_rng);
  };
  const AdversaryFn adversary = [&](const MlpModel& model) {
    return attack(meta, model);
  };
  const DistanceFn distance = DistanceFn::absolute();
  const std::vector<GameTrial> trials =
      play_game(index_set, factory, adversary, distance, n_attacks, rng, threads);

  AttackReport report;
  report.task = meta.task;
  report.n_attacks = n_attacks;
  report.advantage = advantage(trials, d_zero(index_set, distance));
  if (meta.task == AttackTask::kClassify) {
    const double accuracy = 1.0 - report.advantage.mean_distance;
    report.value = accuracy;
    report.ci95_halfwidth =
        1.96 * std::sqrt(accuracy * (1.0 - accuracy) /
                         static_cast<double>(n_attacks));
  } else {
    report.value = report.advantage.mean_distance;
    report.ci95_halfwidth = report.advantage.ci95_halfwidth;
  }
  return report;
}

void write_corpus_csv(const ShadowCorpus& corpus, std::ostream& out) {
  const Eigen::Index dim =
      corpus.records.empty() ? 0 : corpus.records.front().attack_features.size();
  out << "shadow_id,r";
  for (Eigen::Index j = 0; j < dim; ++j) out << ",f" << j;
  out << '\n';
  for (size_t i = 0; i < corpus.records.size(); ++i) {
    out << i << ',' << format_double(corpus.records[i].r);
    const auto& f = corpus.records[i].attack_features;
    for (Eigen::Index j = 0; j < f.size(); ++j) {
      out << ',' << format_double(f[j]);
    }
    out << '\n';
  }
}

void save_meta(const MetaModel& meta, std::ostream& out) {
  out << "META " << (meta.mode == AttackMode::kWhitebox ? "whitebox" : "blackbox")
      << ' ' << (meta.task == AttackTask::kClassify ? "classify" : "regress")
      << ' ' << (meta.quadratic_features ? 1 : 0) << ' '
      << (meta.activation == Activation::kRelu ? "relu" : "linear");
  for (int d : meta.model_dims) out << ' ' << d;
  out << '\n';
  out << "columns";
  for (int c : meta.input_columns) out << ' ' << c;
  out << '\n';
  out << "probe " << meta.probe_features.rows() << ' ' << meta.probe_features.cols()
      << '\n';
  Eigen::VectorXd probe_flat(meta.probe_features.size());
  Eigen::Index pos = 0;
  for (Eigen::Index i = 0; i < meta.probe_features.rows(); ++i) {
    for (Eigen::Index j = 0; j < meta.probe_features.cols(); ++j) {
      probe_flat[pos++] = meta.probe_features(i, j);
    }
  }
  emit_vector(out, probe_flat);
  emit_vector(out, meta.feature_mean);
  emit_vector(out, meta.feature_scale);
  emit_vector(out, meta.coefficients);
  emit_vector(out, Eigen::VectorXd::Constant(1, meta.intercept));
}

MetaModel load_meta(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidParameterError("load_meta: missing header");
  std::istringstream hs(line);
  std::string magic, mode, task, activation;
  int quadratic = 0;
  hs >> magic >> mode >> task >> quadratic >> activation;
  if (magic != "META") throw InvalidParameterError("load_meta: bad magic '" + magic + "'");
  MetaModel meta;
  meta.mode = mode == "whitebox" ? AttackMode::kWhitebox : AttackMode::kBlackbox;
  meta.task = task == "classify" ? AttackTask::kClassify : AttackTask::kRegress;
  meta.quadratic_features = quadratic != 0;
  meta.activation = activation == "relu" ? Activation::kRelu : Activation::kLinear;
  for (int d; hs >> d;) meta.model_dims.push_back(d);

  if (!std::getline(in, line)) throw InvalidParameterError("load_meta: missing columns");
  std::istringstream cs(line);
  std::string tag;
  cs >> tag;
  if (tag != "columns") throw InvalidParameterError("load_meta: expected columns line");
  for (int c; cs >> c;) meta.input_columns.push_back(c);

  if (!std::getline(in, line)) throw InvalidParameterError("load_meta: missing probe");
  std::istringstream ps(line);
  Eigen::Index rows = 0, cols = 0;
  ps >> tag >> rows >> cols;
  if (tag != "probe") throw InvalidParameterError("load_meta: expected probe line");
  const Eigen::VectorXd probe_flat = read_vector_line(in, rows * cols, "probe values");
  meta.probe_features.resize(rows, cols);
  Eigen::Index pos = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      meta.probe_features(i, j) = probe_flat[pos++];
    }
  }
  // Mean and scale share a length; infer it from the next line's value count.
  std::string mean_line;
  if (!std::getline(in, mean_line)) throw InvalidParameterError("load_meta: missing mean");
  std::istringstream ms(mean_line);
  std::vector<double> mean_values;
  for (double v; ms >> v;) mean_values.push_back(v);
  meta.feature_mean = Eigen::Map<const Eigen::VectorXd>(
      mean_values.data(), static_cast<Eigen::Index>(mean_values.size()));
  const Eigen::Index dim = meta.feature_mean.size();
  meta.feature_scale = read_vector_line(in, dim, "scale");
  meta.coefficients = read_vector_line(in, dim, "coefficients");
  meta.intercept = read_vector_line(in, 1, "intercept")[0];
  return meta;
}

}  // namespace distinf
