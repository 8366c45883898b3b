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

#ifndef DISTINF_GAME_H_
#define DISTINF_GAME_H_

#include <functional>
#include <vector>

#include "distinf/mlp.h"
#include "distinf/rng.h"

namespace distinf {

// Supported index sets for the training-distribution index r.
enum class IndexSet { kBinary01, kInterval01 };

enum class DistanceKind { kAbsolute, kSquared, kCustom };

// Distance on the index set grading the quality of a guess. Not necessarily
// symmetric; d(r, r) == 0 for the built-in kinds.
class DistanceFn {
 public:
  static DistanceFn absolute();
  static DistanceFn squared();
  // Arbitrary evaluator; admitted by the interface but without an optimal
  // model-free guess evaluation (d_zero rejects it).
  static DistanceFn custom(std::function<double(double, double)> evaluator);

  DistanceKind kind() const { return kind_; }
  double operator()(double r, double guess) const { return evaluator_(r, guess); }

 private:
  DistanceFn(DistanceKind kind, std::function<double(double, double)> evaluator)
      : kind_(kind), evaluator_(std::move(evaluator)) {}
  DistanceKind kind_;
  std::function<double(double, double)> evaluator_;
};

// Expected distance of the best constant guess under a uniform prior on the
// index set: the guess is enumerated for the binary set and found by
// one-dimensional minimization of the closed-form expectation on [0, 1].
// Custom distances raise UnsupportedConfigurationError.
double d_zero(IndexSet index_set, const DistanceFn& distance);

struct GameTrial {
  double true_r = 0.0;
  double guess_r = 0.0;
  double distance = 0.0;
};

struct AdvantageReport {
  double d_zero = 0.0;
  double mean_distance = 0.0;
  double advantage = 0.0;  // d_zero - mean_distance
  int trial_count = 0;
  double ci95_halfwidth = 0.0;
};

// Trains one target model for a trial: samples a dataset from the indexed
// distribution and fits the configured model, consuming only the given rng.
using TargetFactory = std::function<MlpModel(double r, SeededRng& rng)>;

// The adversary's guess from the released model alone.
using AdversaryFn = std::function<double(const MlpModel& model)>;

// Plays `trials` rounds of the inference game: per round draw r uniformly
// from the index set, build the target via the factory, ask the adversary for
// a guess, and record the distance. Per-trial rng streams are derived as
// rng.stream("game-trial", t), so results are independent of `threads` and
// disjoint from any "shadow" streams used to fit the adversary.
std::vector<GameTrial> play_game(IndexSet index_set, const TargetFactory& factory,
                                 const AdversaryFn& adversary,
                                 const DistanceFn& distance, int trials,
                                 const SeededRng& rng, int threads = 1);

// Mean distance, advantage over the optimal constant guess, and a 95%
// normal-approximation confidence half-width. Trials must be nonempty.
AdvantageReport advantage(const std::vector<GameTrial>& trials, double d_zero);

}  // namespace distinf

#endif  // DISTINF_GAME_H_
