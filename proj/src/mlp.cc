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

#include "distinf/mlp.h"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <string>

#include "distinf/error.h"

namespace distinf {
namespace {

void check_dims(const std::vector<int>& dims) {
  if (dims.size() < 2) {
    throw InvalidParameterError("mlp: need at least input and output dims");
  }
  for (int d : dims) {
    if (d <= 0) throw InvalidParameterError("mlp: layer dims must be positive");
  }
}

std::string activation_name(Activation a) {
  return a == Activation::kRelu ? "relu" : "linear";
}

Activation activation_from_name(const std::string& name) {
  if (name == "relu") return Activation::kRelu;
  if (name == "linear") return Activation::kLinear;
  throw InvalidParameterError("mlp: unknown activation '" + name + "'");
}

void apply_hidden_activation(Activation a, Eigen::MatrixXd& z) {
  if (a == Activation::kRelu) z = z.cwiseMax(0.0);
}

}  // namespace

int MlpModel::parameter_count() const {
  int count = 0;
  for (size_t l = 0; l < weights.size(); ++l) {
    count += static_cast<int>(weights[l].size() + biases[l].size());
  }
  return count;
}

MlpModel random_init(const std::vector<int>& layer_dims, double weight_variance,
                     SeededRng& rng, Activation activation) {
  check_dims(layer_dims);
  if (!(weight_variance >= 0.0)) {
    throw InvalidParameterError("random_init: weight variance must be >= 0");
  }
  MlpModel model;
  model.layer_dims = layer_dims;
  model.hidden_activation = activation;
  for (size_t l = 0; l + 1 < layer_dims.size(); ++l) {
    Eigen::MatrixXd w(layer_dims[l + 1], layer_dims[l]);
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        w(i, j) = rng.gaussian(0.0, weight_variance);
      }
    }
    Eigen::VectorXd b(layer_dims[l + 1]);
    for (Eigen::Index i = 0; i < b.size(); ++i) {
      b[i] = rng.gaussian(0.0, weight_variance);
    }
    model.weights.push_back(std::move(w));
    model.biases.push_back(std::move(b));
  }
  return model;
}

Eigen::VectorXd forward(const MlpModel& model,
                        const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != model.input_dim()) {
    throw InvalidParameterError("forward: input has size " +
                                std::to_string(x.size()) + ", model expects " +
                                std::to_string(model.input_dim()));
  }
  Eigen::VectorXd a = x;
  const int layers = model.num_layers();
  for (int l = 0; l < layers; ++l) {
    Eigen::VectorXd z = model.weights[l] * a + model.biases[l];
    if (l + 1 < layers && model.hidden_activation == Activation::kRelu) {
      z = z.cwiseMax(0.0);
    }
    a = std::move(z);
  }
  return a;
}

Eigen::MatrixXd forward_batch(const MlpModel& model,
                              const Eigen::Ref<const Eigen::MatrixXd>& x_cols) {
  if (x_cols.rows() != model.input_dim()) {
    throw InvalidParameterError("forward_batch: inputs have dimension " +
                                std::to_string(x_cols.rows()) +
                                ", model expects " +
                                std::to_string(model.input_dim()));
  }
  Eigen::MatrixXd a = x_cols;
  const int layers = model.num_layers();
  for (int l = 0; l < layers; ++l) {
    Eigen::MatrixXd z = (model.weights[l] * a).colwise() + model.biases[l];
    if (l + 1 < layers) apply_hidden_activation(model.hidden_activation, z);
    a = std::move(z);
  }
  return a;
}

Eigen::VectorXd predict_rows(const MlpModel& model,
                             const Eigen::Ref<const Eigen::MatrixXd>& rows) {
  if (model.output_dim() != 1) {
    throw InvalidParameterError("predict_rows: output dimension must be 1");
  }
  return forward_batch(model, rows.transpose()).row(0).transpose();
}

Eigen::VectorXd flatten_params(const MlpModel& model, bool canonicalize) {
  const MlpModel* m = &model;
  MlpModel canon;
  if (canonicalize) {
    canon = canonicalized(model);
    m = &canon;
  }
  Eigen::VectorXd out(m->parameter_count());
  Eigen::Index pos = 0;
  for (const auto& w : m->weights) {
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) out[pos++] = w(i, j);
    }
  }
  for (const auto& b : m->biases) {
    out.segment(pos, b.size()) = b;
    pos += b.size();
  }
  return out;
}

MlpModel unflatten_params(const MlpModel& archetype,
                          const Eigen::Ref<const Eigen::VectorXd>& params) {
  if (params.size() != archetype.parameter_count()) {
    throw InvalidParameterError("unflatten_params: expected " +
                                std::to_string(archetype.parameter_count()) +
                                " parameters, got " +
                                std::to_string(params.size()));
  }
  MlpModel model = archetype;
  Eigen::Index pos = 0;
  for (auto& w : model.weights) {
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = params[pos++];
    }
  }
  for (auto& b : model.biases) {
    b = params.segment(pos, b.size());
    pos += b.size();
  }
  return model;
}

MlpModel canonicalized(const MlpModel& model) {
  MlpModel out = model;
  const int layers = out.num_layers();
  for (int l = 0; l + 1 < layers; ++l) {
    const int units = out.layer_dims[l + 1];
    std::vector<int> order(units);
    std::iota(order.begin(), order.end(), 0);
    const Eigen::MatrixXd& w = out.weights[l];
    const Eigen::VectorXd& b = out.biases[l];
    std::sort(order.begin(), order.end(), [&](int a_idx, int b_idx) {
      if (b[a_idx] != b[b_idx]) return b[a_idx] > b[b_idx];
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        if (w(a_idx, j) != w(b_idx, j)) return w(a_idx, j) > w(b_idx, j);
      }
      return false;
    });
    Eigen::MatrixXd new_w(w.rows(), w.cols());
    Eigen::VectorXd new_b(b.size());
    Eigen::MatrixXd new_next(out.weights[l + 1].rows(), out.weights[l + 1].cols());
    for (int i = 0; i < units; ++i) {
      new_w.row(i) = w.row(order[i]);
      new_b[i] = b[order[i]];
      new_next.col(i) = out.weights[l + 1].col(order[i]);
    }
    out.weights[l] = std::move(new_w);
    out.biases[l] = std::move(new_b);
    out.weights[l + 1] = std::move(new_next);
  }
  return out;
}

void save_mlp(const MlpModel& model, std::ostream& out) {
  out << "MLP " << activation_name(model.hidden_activation);
  for (int d : model.layer_dims) out << ' ' << d;
  out << '\n';
  char buf[64];
  auto emit = [&](double v, bool first) {
    std::snprintf(buf, sizeof(buf), first ? "%.17g" : " %.17g", v);
    out << buf;
  };
  for (const auto& w : model.weights) {
    bool first = true;
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        emit(w(i, j), first);
        first = false;
      }
    }
    out << '\n';
  }
  for (const auto& b : model.biases) {
    bool first = true;
    for (Eigen::Index i = 0; i < b.size(); ++i) {
      emit(b[i], first);
      first = false;
    }
    out << '\n';
  }
}

MlpModel load_mlp(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) {
    throw InvalidParameterError("load_mlp: missing header");
  }
  std::istringstream hs(header);
  std::string magic, activation;
  hs >> magic >> activation;
  if (magic != "MLP") throw InvalidParameterError("load_mlp: bad magic '" + magic + "'");
  std::vector<int> dims;
  for (int d; hs >> d;) dims.push_back(d);
  check_dims(dims);

  MlpModel model;
  model.layer_dims = dims;
  model.hidden_activation = activation_from_name(activation);
  auto read_line_values = [&](Eigen::Index count) {
    std::string line;
    if (!std::getline(in, line)) {
      throw InvalidParameterError("load_mlp: truncated parameter block");
    }
    std::istringstream ls(line);
    Eigen::VectorXd values(count);
    for (Eigen::Index i = 0; i < count; ++i) {
      if (!(ls >> values[i])) {
        throw InvalidParameterError("load_mlp: expected " + std::to_string(count) +
                                    " values on a layer line");
      }
    }
    return values;
  };
  for (size_t l = 0; l + 1 < dims.size(); ++l) {
    const Eigen::Index rows = dims[l + 1], cols = dims[l];
    const Eigen::VectorXd flat = read_line_values(rows * cols);
    Eigen::MatrixXd w(rows, cols);
    Eigen::Index pos = 0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) w(i, j) = flat[pos++];
    }
    model.weights.push_back(std::move(w));
  }
  for (size_t l = 0; l + 1 < dims.size(); ++l) {
    model.biases.push_back(read_line_values(dims[l + 1]));
  }
  return model;
}

}  // namespace distinf
