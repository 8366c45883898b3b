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

#include "distinf/game.h"

#include <cmath>

#include "distinf/error.h"
#include "distinf/stats.h"
#include "distinf/thread_pool.h"

namespace distinf {
namespace {

// Closed-form E[d(r, guess)] for r uniform on the index set.
double expected_distance(IndexSet index_set, DistanceKind kind, double guess) {
  switch (index_set) {
    case IndexSet::kBinary01:
      if (kind == DistanceKind::kAbsolute) {
        return 0.5 * (std::abs(0.0 - guess) + std::abs(1.0 - guess));
      }
      return 0.5 * (guess * guess + (1.0 - guess) * (1.0 - guess));
    case IndexSet::kInterval01:
      if (kind == DistanceKind::kAbsolute) {
        // int_0^1 |r - g| dr for g in [0, 1].
        return guess * guess - guess + 0.5;
      }
      // int_0^1 (r - g)^2 dr.
      return guess * guess - guess + 1.0 / 3.0;
  }
  return 0.0;
}

}  // namespace

DistanceFn DistanceFn::absolute() {
  return DistanceFn(DistanceKind::kAbsolute,
                    [](double r, double guess) { return std::abs(r - guess); });
}

DistanceFn DistanceFn::squared() {
  return DistanceFn(DistanceKind::kSquared, [](double r, double guess) {
    return (r - guess) * (r - guess);
  });
}

DistanceFn DistanceFn::custom(std::function<double(double, double)> evaluator) {
  return DistanceFn(DistanceKind::kCustom, std::move(evaluator));
}

double d_zero(IndexSet index_set, const DistanceFn& distance) {
  if (distance.kind() == DistanceKind::kCustom) {
    throw UnsupportedConfigurationError(
        "d_zero: no optimal-guess evaluation for custom distances");
  }
  if (index_set == IndexSet::kBinary01) {
    // Guesses range over the index set itself.
    return std::min(expected_distance(index_set, distance.kind(), 0.0),
                    expected_distance(index_set, distance.kind(), 1.0));
  }
  // Golden-section search on the (convex) closed-form expectation.
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = 0.0, hi = 1.0;
  double a = hi - kInvPhi * (hi - lo);
  double b = lo + kInvPhi * (hi - lo);
  double fa = expected_distance(index_set, distance.kind(), a);
  double fb = expected_distance(index_set, distance.kind(), b);
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - kInvPhi * (hi - lo);
      fa = expected_distance(index_set, distance.kind(), a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + kInvPhi * (hi - lo);
      fb = expected_distance(index_set, distance.kind(), b);
    }
  }
  return expected_distance(index_set, distance.kind(), 0.5 * (lo + hi));
}

std::vector<GameTrial> play_game(IndexSet index_set, const TargetFactory& factory,
                                 const AdversaryFn& adversary,
                                 const DistanceFn& distance, int trials,
                                 const SeededRng& rng, int threads) {
  if (trials < 0) throw InvalidParameterError("play_game: trials must be >= 0");
  std::vector<GameTrial> result(static_cast<size_t>(trials));
  parallel_for(trials, threads, [&](int t) {
    SeededRng trial_rng = rng.stream("game-trial", static_cast<uint64_t>(t));
    const double r = index_set == IndexSet::kBinary01
                         ? static_cast<double>(trial_rng.uniform_below(2))
                         : trial_rng.uniform01();
    const MlpModel target = factory(r, trial_rng);
    const double guess = adversary(target);
    result[static_cast<size_t>(t)] = GameTrial{r, guess, distance(r, guess)};
  });
  return result;
}

AdvantageReport advantage(const std::vector<GameTrial>& trials, double d_zero) {
  if (trials.empty()) {
    throw InvalidParameterError("advantage: empty trial list");
  }
  MomentAccumulator distances;
  for (const auto& trial : trials) distances.add(trial.distance);
  AdvantageReport report;
  report.d_zero = d_zero;
  report.mean_distance = distances.mean();
  report.advantage = d_zero - report.mean_distance;
  report.trial_count = static_cast<int>(trials.size());
  report.ci95_halfwidth = distances.ci95_halfwidth();
  return report;
}

}  // namespace distinf
