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

#ifndef DISTINF_STATS_H_
#define DISTINF_STATS_H_

#include <cmath>
#include <cstdint>

namespace distinf {

// Kahan compensated summation, so aggregate moments do not drift with the
// number of Monte Carlo trials.
class KahanSum {
 public:
  void add(double value) {
    const double y = value - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Streaming mean/variance with compensated sums. Variance uses the unbiased
// 1/(n-1) divisor; for n < 2 it reports 0.
class MomentAccumulator {
 public:
  void add(double value) {
    sum_.add(value);
    sum_sq_.add(value * value);
    ++count_;
  }
  int64_t count() const { return count_; }
  double mean() const { return count_ > 0 ? sum_.value() / static_cast<double>(count_) : 0.0; }
  double variance() const {
    if (count_ < 2) return 0.0;
    const double n = static_cast<double>(count_);
    const double m = mean();
    const double v = (sum_sq_.value() - n * m * m) / (n - 1.0);
    return v > 0.0 ? v : 0.0;
  }
  // Half-width of a 95% normal-approximation confidence interval for the mean.
  double ci95_halfwidth() const {
    if (count_ < 2) return 0.0;
    return 1.96 * std::sqrt(variance() / static_cast<double>(count_));
  }

 private:
  KahanSum sum_;
  KahanSum sum_sq_;
  int64_t count_ = 0;
};

}  // namespace distinf

#endif  // DISTINF_STATS_H_
