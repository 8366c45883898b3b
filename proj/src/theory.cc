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

#include "distinf/theory.h"

#include <atomic>
#include <cmath>
#include <string>
#include <vector>

#include "distinf/error.h"
#include "distinf/stats.h"
#include "distinf/thread_pool.h"

namespace distinf {
namespace {

Dataset sample_linear(const LinearTheoryParams& params, SeededRng& rng) {
  return gen_linear(params.beta0, params.beta1, params.noise_variance,
                    params.feature_law, params.scale_c, params.n, rng);
}

// Aggregates per-coefficient moments over trial vectors with compensated
// sums; trial results are collected into slots first so threading cannot
// change the summation order.
BetaDistributionEstimate aggregate(const std::vector<Eigen::VectorXd>& betas,
                                   int singular_count) {
  BetaDistributionEstimate estimate;
  estimate.singular_count = singular_count;
  Eigen::Index dim = 0;
  for (const auto& beta : betas) {
    if (beta.size() > 0) {
      dim = beta.size();
      break;
    }
  }
  std::vector<MomentAccumulator> acc(static_cast<size_t>(dim));
  for (const auto& beta : betas) {
    if (beta.size() == 0) continue;  // singular fit
    for (Eigen::Index j = 0; j < dim; ++j) acc[static_cast<size_t>(j)].add(beta[j]);
  }
  estimate.n_trials = static_cast<int>(dim > 0 ? acc[0].count() : 0);
  estimate.mean.resize(dim);
  estimate.variance.resize(dim);
  estimate.ci95_halfwidth.resize(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    estimate.mean[j] = acc[static_cast<size_t>(j)].mean();
    estimate.variance[j] = acc[static_cast<size_t>(j)].variance();
    estimate.ci95_halfwidth[j] = acc[static_cast<size_t>(j)].ci95_halfwidth();
  }
  return estimate;
}

}  // namespace

BetaDistributionEstimate mc_beta(const LinearTheoryParams& params, bool intercept,
                                 int trials, const SeededRng& rng, int threads) {
  if (trials < 100) {
    throw InvalidParameterError("mc_beta: need at least 100 trials");
  }
  std::vector<Eigen::VectorXd> betas(static_cast<size_t>(trials));
  std::atomic<int> singular{0};
  parallel_for(trials, threads, [&](int t) {
    SeededRng trial_rng = rng.stream("mc-beta", static_cast<uint64_t>(t));
    const Dataset data = sample_linear(params, trial_rng);
    try {
      betas[static_cast<size_t>(t)] = ols_fit(data, intercept).beta_hat;
    } catch (const SingularSystemError&) {
      singular.fetch_add(1, std::memory_order_relaxed);
    }
  });
  if (singular.load() * 100 > trials) {
    throw DegenerateConfigurationError(
        "mc_beta: " + std::to_string(singular.load()) + " of " +
        std::to_string(trials) + " fits were singular");
  }
  return aggregate(betas, singular.load());
}

Reason1Report check_reason1(double slope0, double slope1,
                            const LinearTheoryParams& base, int trials,
                            const SeededRng& rng, int threads) {
  // Equal slopes are permitted as a negative control; the report then simply
  // cannot separate.
  LinearTheoryParams params0 = base;
  params0.beta1 = slope0;
  LinearTheoryParams params1 = base;
  params1.beta1 = slope1;

  Reason1Report report;
  report.planted_slope0 = slope0;
  report.planted_slope1 = slope1;
  report.estimate0 =
      mc_beta(params0, /*intercept=*/true, trials, rng.stream("d0", 0), threads);
  report.estimate1 =
      mc_beta(params1, /*intercept=*/true, trials, rng.stream("d1", 0), threads);
  const Eigen::Index slope_idx = 1;  // (intercept, slope)
  report.separation =
      std::abs(report.estimate1.mean[slope_idx] - report.estimate0.mean[slope_idx]);
  report.separation_ci = report.estimate0.ci95_halfwidth[slope_idx] +
                         report.estimate1.ci95_halfwidth[slope_idx];
  report.separated = report.separation > report.separation_ci;
  const bool match0 =
      std::abs(report.estimate0.mean[0] - base.beta0) <=
          report.estimate0.ci95_halfwidth[0] &&
      std::abs(report.estimate0.mean[1] - slope0) <=
          report.estimate0.ci95_halfwidth[1];
  const bool match1 =
      std::abs(report.estimate1.mean[0] - base.beta0) <=
          report.estimate1.ci95_halfwidth[0] &&
      std::abs(report.estimate1.mean[1] - slope1) <=
          report.estimate1.ci95_halfwidth[1];
  report.matches_plants = match0 && match1;
  return report;
}

Reason2Report check_reason2(double c, const GaussianLaw& feature_law,
                            double noise_variance, int n, int trials,
                            const SeededRng& rng, int threads) {
  if (!(c > 0.0)) throw InvalidParameterError("check_reason2: c must be > 0");
  // Y = X + 1 + eps, fitted without an intercept.
  LinearTheoryParams params0;
  params0.beta0 = 1.0;
  params0.beta1 = 1.0;
  params0.noise_variance = noise_variance;
  params0.feature_law = feature_law;
  params0.scale_c = 1.0;
  params0.n = n;
  LinearTheoryParams params1 = params0;
  params1.scale_c = c;

  Reason2Report report;
  const BetaDistributionEstimate estimate0 =
      mc_beta(params0, /*intercept=*/false, trials, rng.stream("d0", 0), threads);
  const BetaDistributionEstimate estimate1 =
      mc_beta(params1, /*intercept=*/false, trials, rng.stream("d1", 0), threads);
  report.mean_slope0 = estimate0.mean[0];
  report.mean_slope1 = estimate1.mean[0];
  report.shift = report.mean_slope1 - report.mean_slope0;
  report.shift_ci = estimate0.ci95_halfwidth[0] + estimate1.ci95_halfwidth[0];
  report.shift_nonzero = std::abs(report.shift) > report.shift_ci;

  // tau = E[sum X / sum X^2] under the scale-1 distribution, same n.
  MomentAccumulator tau_acc;
  std::vector<double> tau_values(static_cast<size_t>(trials));
  const SeededRng tau_rng = rng.stream("tau", 0);
  parallel_for(trials, threads, [&](int t) {
    SeededRng trial_rng = tau_rng.stream("mc-tau", static_cast<uint64_t>(t));
    const Dataset data = sample_linear(params0, trial_rng);
    const double sum = data.features.col(0).sum();
    const double sum_sq = data.features.col(0).squaredNorm();
    tau_values[static_cast<size_t>(t)] = sum / sum_sq;
  });
  for (double v : tau_values) tau_acc.add(v);
  report.tau = tau_acc.mean();
  report.tau_ci = tau_acc.ci95_halfwidth();
  report.candidate_scaled = (c - 1.0) * report.tau;
  report.candidate_substituted = (1.0 / c - 1.0) * report.tau;
  auto rel_error = [&](double candidate) {
    const double denom = std::max(std::abs(report.shift), 1e-300);
    return std::abs(report.shift - candidate) / denom;
  };
  report.rel_error_scaled = rel_error(report.candidate_scaled);
  report.rel_error_substituted = rel_error(report.candidate_substituted);
  return report;
}

Reason3Report check_reason3(double c, const LinearTheoryParams& base, int trials,
                            const SeededRng& rng, int threads) {
  if (!(c > 0.0)) throw InvalidParameterError("check_reason3: c must be > 0");
  LinearTheoryParams params0 = base;
  params0.scale_c = 1.0;
  LinearTheoryParams params1 = base;
  params1.scale_c = c;
  const BetaDistributionEstimate estimate0 =
      mc_beta(params0, /*intercept=*/true, trials, rng.stream("d0", 0), threads);
  const BetaDistributionEstimate estimate1 =
      mc_beta(params1, /*intercept=*/true, trials, rng.stream("d1", 0), threads);
  Reason3Report report;
  report.variance0 = estimate0.variance[1];
  report.variance1 = estimate1.variance[1];
  report.ratio = report.variance1 / report.variance0;
  report.expected_ratio = 1.0 / (c * c);
  report.rel_error =
      std::abs(report.ratio - report.expected_ratio) / report.expected_ratio;
  return report;
}

SubsamplingGapReport subsampling_gap(double p0, double p1, double rho0, double rho1,
                                     bool t_is_feature, int n, const SeededRng& rng) {
  for (double p : {p0, p1, rho0, rho1}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InvalidParameterError("subsampling_gap: probabilities must lie in [0, 1]");
    }
  }
  if (n < 1) throw InvalidParameterError("subsampling_gap: n must be >= 1");

  // Base population with exact half/half T strata; X ~ Bern(1/2) independent
  // of T, and Pr(Y = 0 | T = t) = p_t regardless of X.
  const int base_n = 3 * n;
  SeededRng base_rng = rng.stream("base", 0);
  Dataset base;
  base.features.resize(base_n, 2);  // columns: X, T
  base.labels.resize(base_n);
  for (int i = 0; i < base_n; ++i) {
    const double t = i < base_n / 2 ? 0.0 : 1.0;
    const double p = t == 0.0 ? p0 : p1;
    base.features(i, 0) = base_rng.uniform01() < 0.5 ? 0.0 : 1.0;
    base.features(i, 1) = t;
    base.labels[i] = base_rng.uniform01() < p ? 0.0 : 1.0;
  }

  auto conditional_prob = [&](const Dataset& data, int* count_out) {
    // Pr(Y = 0 | X = 0), additionally conditioning on T = 0 when the
    // attribute stays a feature (fixing the full feature vector).
    int count = 0, zeros = 0;
    for (Eigen::Index i = 0; i < data.n(); ++i) {
      if (data.features(i, 0) != 0.0) continue;
      if (t_is_feature && data.features(i, 1) != 0.0) continue;
      ++count;
      zeros += data.labels[i] == 0.0 ? 1 : 0;
    }
    *count_out = count;
    return count > 0 ? static_cast<double>(zeros) / count : 0.0;
  };

  SubsamplingGapReport report;
  report.p0 = p0;
  report.p1 = p1;
  report.t_is_feature = t_is_feature;
  report.analytic_gap = t_is_feature ? 0.0 : (p0 - p1) * (rho0 - rho1);

  SubsampleParams sub;
  sub.base = base;
  sub.t_column = 1;
  sub.t_is_feature = t_is_feature;
  sub.n = n;
  sub.ratio = rho0;
  SeededRng rng0 = rng.stream("subsample", 0);
  const Dataset d0 = subsample_by_attribute(sub, rng0);
  sub.ratio = rho1;
  SeededRng rng1 = rng.stream("subsample", 1);
  const Dataset d1 = subsample_by_attribute(sub, rng1);

  // With t hidden, the attribute column was dropped: re-condition only on X.
  // The datasets keep X in column 0 either way.
  int count0 = 0, count1 = 0;
  const double prob0 = conditional_prob(d0, &count0);
  const double prob1 = conditional_prob(d1, &count1);
  report.empirical_gap = prob0 - prob1;
  report.standard_error =
      std::sqrt(prob0 * (1.0 - prob0) / std::max(count0, 1) +
                prob1 * (1.0 - prob1) / std::max(count1, 1));
  report.within_3se = std::abs(report.empirical_gap - report.analytic_gap) <=
                      3.0 * report.standard_error;
  return report;
}

}  // namespace distinf
