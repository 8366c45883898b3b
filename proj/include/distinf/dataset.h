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

#ifndef DISTINF_DATASET_H_
#define DISTINF_DATASET_H_

#include <ostream>
#include <vector>

#include <Eigen/Core>

namespace distinf {

// A feature matrix plus label vector; the unit every generator produces and
// every trainer consumes. Rows are records.
struct Dataset {
  Eigen::MatrixXd features;  // n x d
  Eigen::VectorXd labels;    // n

  Eigen::Index n() const { return features.rows(); }
  Eigen::Index dim() const { return features.cols(); }
};

// Throws InvalidParameterError if label count differs from the feature row
// count or any entry is non-finite.
void validate(const Dataset& data);

// Rows of a followed by rows of b; feature dimensions must match.
Dataset concat(const Dataset& a, const Dataset& b);

// A copy keeping only the given feature columns (labels unchanged).
Dataset select_columns(const Dataset& data, const std::vector<int>& columns);

// CSV with header x1,...,xd,y; row order and float formatting are
// deterministic (shortest round-trip decimal form).
void write_csv(const Dataset& data, std::ostream& out);

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double value);

}  // namespace distinf

#endif  // DISTINF_DATASET_H_
