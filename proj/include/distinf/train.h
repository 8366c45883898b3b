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

#ifndef DISTINF_TRAIN_H_
#define DISTINF_TRAIN_H_

#include <optional>
#include <vector>

#include "distinf/dataset.h"
#include "distinf/mlp.h"
#include "distinf/rng.h"

namespace distinf {

struct TrainOptions {
  double learning_rate = 0.01;
  int max_epochs = 100;
  int batch_size = 64;
  // When set, training halts at the end of the first epoch whose
  // full-training-set MSE falls below this value.
  std::optional<double> target_train_mse;
  SeededRng seed{0, 0};
};

// Parameter-shaped gradient (same layout as MlpModel weights/biases).
struct ParamGrad {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

// Mean over records of the squared error of the scalar output.
double mse(const MlpModel& model, const Dataset& data);

// Exact gradient of mse(model, data) with respect to every weight and bias.
// The batch must be nonempty and the output dimension 1.
ParamGrad gradient(const MlpModel& model, const Dataset& data);

// Sum over columns of coefficient-weighted output gradients,
// sum_i coeffs[i] * d f(x_i) / d theta, the backpropagation primitive both
// the risk and the invariance-penalty terms reduce to.
ParamGrad backprop_weighted(const MlpModel& model,
                            const Eigen::Ref<const Eigen::MatrixXd>& x_cols,
                            const Eigen::Ref<const Eigen::RowVectorXd>& coeffs);

struct TrainResult {
  MlpModel model;
  std::vector<double> epoch_mse;  // full-training-set MSE after each epoch
  bool reached_target = false;    // meaningful when a target was set
};

// Mini-batch gradient descent on MSE. Batches are drawn from a fresh shuffle
// each epoch; with batch_size >= n the epoch is a single full-batch step and
// no shuffling happens. Hitting max_epochs without reaching the target is not
// an error; the flag in the result records it.
TrainResult train_erm(MlpModel model, const Dataset& data,
                      const TrainOptions& opts);

// Invariant-risk training spec: a representation network phi with
// one-dimensional output, a fixed scalar classifier w == 1 that is never
// updated, and one dataset per training environment.
struct IrmSpec {
  MlpModel phi;
  static constexpr double kClassifierWeight = 1.0;
  double penalty_weight = 100.0;
  int warmup_epochs = 50;
  double warmup_penalty_weight = 1.0;
  std::vector<Dataset> environments;
};

// Per-environment squared gradient of the risk in the scalar classifier,
// sum_e ((2/n_e) * sum_i (phi(x_i) - y_i) * phi(x_i))^2.
double irm_penalty(const MlpModel& phi, const std::vector<Dataset>& environments);

// Full-batch gradient descent on
//   sum_e R^e(phi) + lambda * sum_e (d/dw R^e(w * phi) at w=1)^2,
// with lambda ramping from warmup_penalty_weight to penalty_weight after
// warmup_epochs. Past lambda = 1 the objective is rescaled by 1 / lambda
// (same minimizer, step size stays usable across penalty weights). Each epoch
// takes one step on the exact gradient, so with a single environment and zero
// penalty the parameter trajectory coincides with full-batch train_erm.
TrainResult train_irm(const IrmSpec& spec, const TrainOptions& opts);

}  // namespace distinf

#endif  // DISTINF_TRAIN_H_
