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

#ifndef DISTINF_RNG_H_
#define DISTINF_RNG_H_

#include <cstdint>
#include <string_view>

#include <Eigen/Core>

namespace distinf {

// FNV-1a hash of (kind, ordinal), used to derive per-task stream indices
// that do not depend on scheduling order.
uint64_t stable_stream_index(std::string_view kind, uint64_t ordinal);

// Deterministic pseudo-random generator (xoshiro256++) addressed by a
// (master_seed, stream_index) pair.
//
// Identical pairs yield identical sample sequences; distinct stream indices
// yield statistically independent streams of the same master seed. Instances
// are cheap values but single-owner: never share one across threads, derive
// one stream per task instead.
class SeededRng {
 public:
  explicit SeededRng(uint64_t master_seed, uint64_t stream_index = 0);

  uint64_t master_seed() const { return master_seed_; }
  uint64_t stream_index() const { return stream_index_; }

  // Fresh generators on the same master seed. The (kind, ordinal) form mixes
  // the parent's stream index into the derived index, so nested derivations
  // with equal (kind, ordinal) under different parents stay disjoint.
  SeededRng stream(uint64_t stream_index) const;
  SeededRng stream(std::string_view kind, uint64_t ordinal) const;

  uint64_t next_u64();

  // Uniform in [0, 1).
  double uniform01();

  // Unbiased uniform integer in [0, bound); bound must be positive.
  uint64_t uniform_below(uint64_t bound);

  // One draw from N(mean, variance). The second parameter is a variance, not
  // a standard deviation; the whole library follows this convention.
  // variance must be >= 0; variance == 0 returns mean exactly.
  double gaussian(double mean, double variance);

 private:
  uint64_t master_seed_;
  uint64_t stream_index_;
  uint64_t state_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// count independent draws from N(mean, variance).
Eigen::VectorXd gaussian_vector(SeededRng& rng, double mean, double variance,
                                int count);

}  // namespace distinf

#endif  // DISTINF_RNG_H_
