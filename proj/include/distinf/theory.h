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

#ifndef DISTINF_THEORY_H_
#define DISTINF_THEORY_H_

#include "distinf/families.h"
#include "distinf/ols.h"
#include "distinf/rng.h"

namespace distinf {

// Parameters of one linear training distribution: X ~ feature_law scaled by
// scale_c, Y = beta0 + beta1 X + N(0, noise_variance), n records per dataset.
struct LinearTheoryParams {
  double beta0 = 0.0;
  double beta1 = 1.0;
  double noise_variance = 1.0;
  GaussianLaw feature_law{1.0, 1.0};
  double scale_c = 1.0;
  int n = 100;
};

// Empirical distribution of the least-squares estimator over repeated
// dataset draws.
struct BetaDistributionEstimate {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;         // unbiased across trials
  Eigen::VectorXd ci95_halfwidth;   // for the mean, per coefficient
  int n_trials = 0;
  int singular_count = 0;
};

// trials >= 100 repeated fits; singular designs are counted and tolerated up
// to 1%, beyond which DegenerateConfigurationError is raised.
BetaDistributionEstimate mc_beta(const LinearTheoryParams& params, bool intercept,
                                 int trials, const SeededRng& rng, int threads = 1);

// Two well-specified distributions with different slopes: the estimator means
// must recover the plants and separate beyond the summed CI half-widths.
struct Reason1Report {
  BetaDistributionEstimate estimate0;
  BetaDistributionEstimate estimate1;
  double planted_slope0 = 0.0;
  double planted_slope1 = 0.0;
  double separation = 0.0;       // |mean slope difference|
  double separation_ci = 0.0;    // sum of the two CI half-widths
  bool separated = false;
  bool matches_plants = false;
};
Reason1Report check_reason1(double slope0, double slope1,
                            const LinearTheoryParams& base, int trials,
                            const SeededRng& rng, int threads = 1);

// Intercepted data fitted without an intercept: the mean slope shift between
// the scale-1 and scale-c distributions, compared against both closed-form
// candidates (c - 1) * tau and (1/c - 1) * tau, with
// tau = E[sum X / sum X^2] under the scale-1 distribution estimated by Monte
// Carlo at the same n.
struct Reason2Report {
  double mean_slope0 = 0.0;
  double mean_slope1 = 0.0;
  double shift = 0.0;
  double shift_ci = 0.0;
  double tau = 0.0;
  double tau_ci = 0.0;
  double candidate_scaled = 0.0;        // (c - 1) * tau
  double candidate_substituted = 0.0;   // (1/c - 1) * tau
  double rel_error_scaled = 0.0;
  double rel_error_substituted = 0.0;
  bool shift_nonzero = false;
};
Reason2Report check_reason2(double c, const GaussianLaw& feature_law,
                            double noise_variance, int n, int trials,
                            const SeededRng& rng, int threads = 1);

// Matched coefficients, features scaled by c: the slope-estimator variance
// ratio must equal 1 / c^2.
struct Reason3Report {
  double variance0 = 0.0;
  double variance1 = 0.0;
  double ratio = 0.0;
  double expected_ratio = 0.0;  // 1 / c^2
  double rel_error = 0.0;
};
Reason3Report check_reason3(double c, const LinearTheoryParams& base, int trials,
                            const SeededRng& rng, int threads = 1);

// Conditional-subsampling gap: binary X, Y, T with
// Pr(Y=0 | X, T=t) = p_t, subsampled to Pr(T=0) = rho0 resp. rho1. The
// empirical gap Pr(Y=0|X=0) difference must match (p0 - p1)(rho0 - rho1)
// (equal to (p0 - p1)^2 at the standard instantiation rho_b = p_b) when T is
// hidden, and 0 when T stays a feature, within 3 binomial standard errors.
struct SubsamplingGapReport {
  double p0 = 0.0;
  double p1 = 0.0;
  double analytic_gap = 0.0;
  double empirical_gap = 0.0;
  double standard_error = 0.0;
  bool t_is_feature = false;
  bool within_3se = false;
};
SubsamplingGapReport subsampling_gap(double p0, double p1, double rho0, double rho1,
                                     bool t_is_feature, int n, const SeededRng& rng);

}  // namespace distinf

#endif  // DISTINF_THEORY_H_
