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

#include "distinf/ols.h"

#include <cmath>
#include <string>

#include <Eigen/QR>

#include "distinf/error.h"

namespace distinf {

OlsFit ols_fit(const Dataset& data, bool intercept) {
  validate(data);
  const Eigen::Index n = data.n();
  const Eigen::Index p = data.dim() + (intercept ? 1 : 0);
  if (p == 0) throw InvalidParameterError("ols_fit: empty design");
  if (n < p) {
    throw InvalidParameterError("ols_fit: need at least " + std::to_string(p) +
                                " records, got " + std::to_string(n));
  }

  Eigen::MatrixXd design(n, p);
  if (intercept) {
    design.col(0).setOnes();
    design.rightCols(data.dim()) = data.features;
  } else {
    design = data.features;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  // The pivoted R diagonal decays with the singular values; its extremal
  // ratio is a serviceable condition estimate for the error message.
  const Eigen::VectorXd r_diag = qr.matrixR().diagonal().cwiseAbs();
  if (qr.rank() < p) {
    const double largest = r_diag.maxCoeff();
    const double smallest = r_diag.minCoeff();
    const double cond =
        smallest > 0.0 ? largest / smallest : std::numeric_limits<double>::infinity();
    throw SingularSystemError(
        "ols_fit: rank-deficient design (rank " + std::to_string(qr.rank()) +
        " of " + std::to_string(p) + ", condition number estimate " +
        format_double(cond) + ")");
  }

  OlsFit fit;
  fit.intercept = intercept;
  fit.beta_hat = qr.solve(data.labels);
  const Eigen::VectorXd residual = design * fit.beta_hat - data.labels;
  fit.residual_mse = residual.squaredNorm() / static_cast<double>(n);
  return fit;
}

double sample_variance(const Eigen::Ref<const Eigen::VectorXd>& values) {
  if (values.size() == 0) {
    throw InvalidParameterError("sample_variance: empty vector");
  }
  const double mean = values.mean();
  return (values.array() - mean).square().sum() /
         static_cast<double>(values.size());
}

}  // namespace distinf
