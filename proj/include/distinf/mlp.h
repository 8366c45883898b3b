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

#ifndef DISTINF_MLP_H_
#define DISTINF_MLP_H_

#include <istream>
#include <ostream>
#include <vector>

#include <Eigen/Core>

#include "distinf/rng.h"

namespace distinf {

enum class Activation { kRelu, kLinear };

// A small fully connected network. weights[l] maps layer l activations to
// layer l+1 pre-activations (dims[l+1] x dims[l]); the output layer is always
// linear, hidden layers use hidden_activation.
struct MlpModel {
  std::vector<int> layer_dims;
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  Activation hidden_activation = Activation::kRelu;

  int input_dim() const { return layer_dims.front(); }
  int output_dim() const { return layer_dims.back(); }
  int num_layers() const { return static_cast<int>(weights.size()); }
  int parameter_count() const;
};

// Weights and biases i.i.d. N(0, weight_variance). layer_dims needs at least
// an input and an output entry, all positive.
MlpModel random_init(const std::vector<int>& layer_dims, double weight_variance,
                     SeededRng& rng, Activation activation = Activation::kRelu);

// Single-input forward pass; x length must equal the input dimension.
Eigen::VectorXd forward(const MlpModel& model,
                        const Eigen::Ref<const Eigen::VectorXd>& x);

// Batched forward pass over column-major samples (inputs x_cols is d x n).
Eigen::MatrixXd forward_batch(const MlpModel& model,
                              const Eigen::Ref<const Eigen::MatrixXd>& x_cols);

// Scalar outputs for row-major records (n x d), as produced by the data
// generators. Output dimension must be 1.
Eigen::VectorXd predict_rows(const MlpModel& model,
                             const Eigen::Ref<const Eigen::MatrixXd>& rows);

// Concatenation of all weight matrices (row-major, layer by layer) followed
// by all bias vectors (layer by layer). With canonicalize set, hidden units
// are first brought into the canonical order (see canonicalized()).
Eigen::VectorXd flatten_params(const MlpModel& model, bool canonicalize);

// Inverse of flatten_params(model, false): parameters from the vector, shapes
// from the archetype.
MlpModel unflatten_params(const MlpModel& archetype,
                          const Eigen::Ref<const Eigen::VectorXd>& params);

// Hidden units of every hidden layer sorted by (bias, then incoming weights
// lexicographically) descending, with outgoing weights permuted consistently.
// The computed function is unchanged; any two models equal up to hidden-unit
// permutations canonicalize to identical parameters.
MlpModel canonicalized(const MlpModel& model);

// Text serialization: header line `MLP <activation> <dims...>`, one line per
// layer of weights (row-major), then one line per layer of biases. Values are
// written with 17 significant digits so round-trips are bit-exact.
void save_mlp(const MlpModel& model, std::ostream& out);
MlpModel load_mlp(std::istream& in);

}  // namespace distinf

#endif  // DISTINF_MLP_H_
