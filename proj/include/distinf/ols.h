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

#ifndef DISTINF_OLS_H_
#define DISTINF_OLS_H_

#include <Eigen/Core>

#include "distinf/dataset.h"

namespace distinf {

struct OlsFit {
  // Coefficients; the intercept comes first when one was fitted, so the
  // vector has d+1 entries with an intercept and d without.
  Eigen::VectorXd beta_hat;
  double residual_mse = 0.0;
  bool intercept = true;
};

// Least-squares fit via a column-pivoted QR decomposition of the design
// matrix (a leading column of ones is prepended when intercept is set).
// Requires n >= number of design columns and full column rank; a
// rank-deficient design raises SingularSystemError naming the estimated
// condition number.
OlsFit ols_fit(const Dataset& data, bool intercept);

// Mean-centered second moment with the 1/n divisor. Length must be >= 1.
double sample_variance(const Eigen::Ref<const Eigen::VectorXd>& values);

}  // namespace distinf

#endif  // DISTINF_OLS_H_
