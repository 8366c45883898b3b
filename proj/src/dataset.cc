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

#include "distinf/dataset.h"

#include <charconv>
#include <cmath>
#include <string>

#include "distinf/error.h"

namespace distinf {

void validate(const Dataset& data) {
  if (data.labels.size() != data.features.rows()) {
    throw InvalidParameterError("dataset: label count " +
                                std::to_string(data.labels.size()) +
                                " does not match record count " +
                                std::to_string(data.features.rows()));
  }
  if (!data.features.allFinite() || !data.labels.allFinite()) {
    throw InvalidParameterError("dataset: non-finite entry");
  }
}

Dataset concat(const Dataset& a, const Dataset& b) {
  if (a.n() == 0) return b;
  if (b.n() == 0) return a;
  if (a.dim() != b.dim()) {
    throw InvalidParameterError("concat: feature dimensions differ");
  }
  Dataset out;
  out.features.resize(a.n() + b.n(), a.dim());
  out.features << a.features, b.features;
  out.labels.resize(a.n() + b.n());
  out.labels << a.labels, b.labels;
  return out;
}

Dataset select_columns(const Dataset& data, const std::vector<int>& columns) {
  Dataset out;
  out.labels = data.labels;
  out.features.resize(data.n(), static_cast<Eigen::Index>(columns.size()));
  for (size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] < 0 || columns[j] >= data.dim()) {
      throw InvalidParameterError("select_columns: column " +
                                  std::to_string(columns[j]) + " out of range");
    }
    out.features.col(static_cast<Eigen::Index>(j)) = data.features.col(columns[j]);
  }
  return out;
}

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_csv(const Dataset& data, std::ostream& out) {
  for (Eigen::Index j = 0; j < data.dim(); ++j) {
    out << 'x' << (j + 1) << ',';
  }
  out << "y\n";
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    for (Eigen::Index j = 0; j < data.dim(); ++j) {
      out << format_double(data.features(i, j)) << ',';
    }
    out << format_double(data.labels[i]) << '\n';
  }
}

}  // namespace distinf
