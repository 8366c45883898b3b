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

#include "distinf/train.h"

#include <numeric>
#include <string>

#include "distinf/error.h"

namespace distinf {
namespace {

void check_options(const TrainOptions& opts) {
  if (!(opts.learning_rate > 0.0)) {
    throw InvalidParameterError("train: learning_rate must be > 0");
  }
  if (opts.max_epochs < 1) {
    throw InvalidParameterError("train: max_epochs must be >= 1");
  }
  if (opts.batch_size < 1) {
    throw InvalidParameterError("train: batch_size must be >= 1");
  }
}

void check_trainable(const MlpModel& model, const Dataset& data) {
  validate(data);
  if (data.n() == 0) throw InvalidParameterError("train: empty dataset");
  if (model.output_dim() != 1) {
    throw InvalidParameterError("train: output dimension must be 1");
  }
  if (model.input_dim() != data.dim()) {
    throw InvalidParameterError("train: model expects " +
                                std::to_string(model.input_dim()) +
                                " features, data has " +
                                std::to_string(data.dim()));
  }
}

ParamGrad zero_like(const MlpModel& model) {
  ParamGrad g;
  g.weights.reserve(model.weights.size());
  g.biases.reserve(model.biases.size());
  for (size_t l = 0; l < model.weights.size(); ++l) {
    g.weights.emplace_back(Eigen::MatrixXd::Zero(model.weights[l].rows(),
                                                 model.weights[l].cols()));
    g.biases.emplace_back(Eigen::VectorXd::Zero(model.biases[l].size()));
  }
  return g;
}

void accumulate(ParamGrad& into, const ParamGrad& g) {
  for (size_t l = 0; l < into.weights.size(); ++l) {
    into.weights[l] += g.weights[l];
    into.biases[l] += g.biases[l];
  }
}

void apply_step(MlpModel& model, const ParamGrad& g, double learning_rate) {
  for (size_t l = 0; l < model.weights.size(); ++l) {
    model.weights[l] -= learning_rate * g.weights[l];
    model.biases[l] -= learning_rate * g.biases[l];
  }
}

// Scalar-output forward over columns, keeping per-layer activations and
// pre-activations for the backward pass.
struct ForwardTrace {
  std::vector<Eigen::MatrixXd> activations;      // activations[0] is the input
  std::vector<Eigen::MatrixXd> pre_activations;  // one per layer
};

Eigen::MatrixXd traced_forward(const MlpModel& model,
                               const Eigen::Ref<const Eigen::MatrixXd>& x_cols,
                               ForwardTrace& trace) {
  const int layers = model.num_layers();
  trace.activations.assign(static_cast<size_t>(layers) + 1, {});
  trace.pre_activations.assign(static_cast<size_t>(layers), {});
  trace.activations[0] = x_cols;
  for (int l = 0; l < layers; ++l) {
    trace.pre_activations[l] =
        (model.weights[l] * trace.activations[l]).colwise() + model.biases[l];
    if (l + 1 < layers && model.hidden_activation == Activation::kRelu) {
      trace.activations[l + 1] = trace.pre_activations[l].cwiseMax(0.0);
    } else {
      trace.activations[l + 1] = trace.pre_activations[l];
    }
  }
  return trace.activations.back();
}

ParamGrad backward_from_trace(const MlpModel& model, const ForwardTrace& trace,
                              const Eigen::Ref<const Eigen::RowVectorXd>& coeffs) {
  const int layers = model.num_layers();
  ParamGrad g;
  g.weights.resize(layers);
  g.biases.resize(layers);
  Eigen::MatrixXd delta = coeffs;  // 1 x n, output layer is linear
  for (int l = layers - 1; l >= 0; --l) {
    g.weights[l] = delta * trace.activations[l].transpose();
    g.biases[l] = delta.rowwise().sum();
    if (l > 0) {
      delta = model.weights[l].transpose() * delta;
      if (model.hidden_activation == Activation::kRelu) {
        delta.array() *=
            (trace.pre_activations[l - 1].array() > 0.0).cast<double>();
      }
    }
  }
  return g;
}

}  // namespace

double mse(const MlpModel& model, const Dataset& data) {
  check_trainable(model, data);
  const Eigen::VectorXd pred = predict_rows(model, data.features);
  return (pred - data.labels).squaredNorm() / static_cast<double>(data.n());
}

ParamGrad backprop_weighted(const MlpModel& model,
                            const Eigen::Ref<const Eigen::MatrixXd>& x_cols,
                            const Eigen::Ref<const Eigen::RowVectorXd>& coeffs) {
  if (model.output_dim() != 1) {
    throw InvalidParameterError("backprop_weighted: output dimension must be 1");
  }
  if (x_cols.cols() != coeffs.size()) {
    throw InvalidParameterError("backprop_weighted: coefficient count mismatch");
  }
  ForwardTrace trace;
  traced_forward(model, x_cols, trace);
  return backward_from_trace(model, trace, coeffs);
}

ParamGrad gradient(const MlpModel& model, const Dataset& data) {
  check_trainable(model, data);
  const Eigen::MatrixXd x_cols = data.features.transpose();
  ForwardTrace trace;
  const Eigen::MatrixXd out = traced_forward(model, x_cols, trace);
  const Eigen::RowVectorXd coeffs =
      (2.0 / static_cast<double>(data.n())) *
      (out.row(0) - data.labels.transpose());
  return backward_from_trace(model, trace, coeffs);
}

TrainResult train_erm(MlpModel model, const Dataset& data,
                      const TrainOptions& opts) {
  check_trainable(model, data);
  check_options(opts);
  SeededRng rng = opts.seed;
  const Eigen::Index n = data.n();
  const Eigen::MatrixXd x_all = data.features.transpose();
  const bool full_batch = opts.batch_size >= n;

  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  TrainResult result;
  result.epoch_mse.reserve(static_cast<size_t>(opts.max_epochs));
  ForwardTrace trace;
  Eigen::MatrixXd x_batch;
  Eigen::RowVectorXd y_batch;

  for (int epoch = 0; epoch < opts.max_epochs; ++epoch) {
    if (full_batch) {
      const Eigen::MatrixXd out = traced_forward(model, x_all, trace);
      const Eigen::RowVectorXd coeffs =
          (2.0 / static_cast<double>(n)) * (out.row(0) - data.labels.transpose());
      apply_step(model, backward_from_trace(model, trace, coeffs),
                 opts.learning_rate);
    } else {
      // Fisher-Yates shuffle, then contiguous mini-batches.
      for (Eigen::Index i = n - 1; i > 0; --i) {
        const auto j = static_cast<Eigen::Index>(
            rng.uniform_below(static_cast<uint64_t>(i) + 1));
        std::swap(order[static_cast<size_t>(i)], order[static_cast<size_t>(j)]);
      }
      for (Eigen::Index start = 0; start < n; start += opts.batch_size) {
        const Eigen::Index m = std::min<Eigen::Index>(opts.batch_size, n - start);
        x_batch.resize(data.dim(), m);
        y_batch.resize(m);
        for (Eigen::Index k = 0; k < m; ++k) {
          const Eigen::Index idx = order[static_cast<size_t>(start + k)];
          x_batch.col(k) = x_all.col(idx);
          y_batch[k] = data.labels[idx];
        }
        const Eigen::MatrixXd out = traced_forward(model, x_batch, trace);
        const Eigen::RowVectorXd coeffs =
            (2.0 / static_cast<double>(m)) * (out.row(0) - y_batch);
        apply_step(model, backward_from_trace(model, trace, coeffs),
                   opts.learning_rate);
      }
    }
    const double full_mse = mse(model, data);
    result.epoch_mse.push_back(full_mse);
    if (opts.target_train_mse && full_mse < *opts.target_train_mse) {
      result.reached_target = true;
      break;
    }
  }
  result.model = std::move(model);
  return result;
}

double irm_penalty(const MlpModel& phi, const std::vector<Dataset>& environments) {
  double penalty = 0.0;
  for (const auto& env : environments) {
    check_trainable(phi, env);
    const Eigen::VectorXd out = predict_rows(phi, env.features);
    const double risk_grad_in_w =
        2.0 * (out - env.labels).dot(out) / static_cast<double>(env.n());
    penalty += risk_grad_in_w * risk_grad_in_w;
  }
  return penalty;
}

TrainResult train_irm(const IrmSpec& spec, const TrainOptions& opts) {
  if (spec.environments.empty()) {
    throw InvalidParameterError("train_irm: at least one environment required");
  }
  for (const auto& env : spec.environments) check_trainable(spec.phi, env);
  check_options(opts);
  if (!(spec.penalty_weight >= 0.0) || !(spec.warmup_penalty_weight >= 0.0)) {
    throw InvalidParameterError("train_irm: penalty weights must be >= 0");
  }

  MlpModel model = spec.phi;
  std::vector<Eigen::MatrixXd> x_cols;
  Eigen::Index total_n = 0;
  x_cols.reserve(spec.environments.size());
  for (const auto& env : spec.environments) {
    x_cols.push_back(env.features.transpose());
    total_n += env.n();
  }

  TrainResult result;
  result.epoch_mse.reserve(static_cast<size_t>(opts.max_epochs));
  ForwardTrace trace;

  for (int epoch = 0; epoch < opts.max_epochs; ++epoch) {
    const double lambda = epoch < spec.warmup_epochs
                              ? spec.warmup_penalty_weight
                              : spec.penalty_weight;
    // Past lambda = 1 the whole objective is rescaled by 1 / lambda, the
    // usual stabilization for this surrogate: the minimizer is unchanged and
    // the step size stays usable across penalty weights.
    const double rescale = 1.0 / std::max(1.0, lambda);
    ParamGrad total = zero_like(model);
    for (size_t e = 0; e < spec.environments.size(); ++e) {
      const Dataset& env = spec.environments[e];
      const double n_e = static_cast<double>(env.n());
      const Eigen::MatrixXd out = traced_forward(model, x_cols[e], trace);
      const Eigen::RowVectorXd residual = out.row(0) - env.labels.transpose();
      Eigen::RowVectorXd coeffs = (2.0 * rescale / n_e) * residual;
      if (lambda != 0.0) {
        const double risk_grad_in_w =
            (2.0 / n_e) * residual.dot(out.row(0));
        coeffs += (4.0 * rescale * lambda * risk_grad_in_w / n_e) *
                  (2.0 * out.row(0) - env.labels.transpose());
      }
      accumulate(total, backward_from_trace(model, trace, coeffs));
    }
    apply_step(model, total, opts.learning_rate);
    // Post-step pooled MSE, like train_erm's once-per-epoch probe.
    double pooled = 0.0;
    for (const auto& env : spec.environments) {
      pooled += mse(model, env) * static_cast<double>(env.n());
    }
    pooled /= static_cast<double>(total_n);
    result.epoch_mse.push_back(pooled);
    if (opts.target_train_mse && pooled < *opts.target_train_mse) {
      result.reached_target = true;
      break;
    }
  }
  result.model = std::move(model);
  return result;
}

}  // namespace distinf
