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

#include "distinf/rng.h"

#include <cmath>
#include <numbers>

#include "distinf/error.h"

namespace distinf {
namespace {

constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr uint64_t kFnvPrime = 0x100000001b3ULL;

uint64_t fnv1a_bytes(uint64_t h, const void* data, size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
  return h;
}

uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

uint64_t stable_stream_index(std::string_view kind, uint64_t ordinal) {
  uint64_t h = fnv1a_bytes(kFnvOffset, kind.data(), kind.size());
  return fnv1a_bytes(h, &ordinal, sizeof(ordinal));
}

SeededRng::SeededRng(uint64_t master_seed, uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
  // Seed the xoshiro state through a splitmix64 chain so that nearby
  // (seed, stream) pairs still start from well-mixed states.
  uint64_t x = master_seed ^ (0x9e3779b97f4a7c15ULL * (stream_index + 1));
  x ^= fnv1a_bytes(kFnvOffset, &stream_index, sizeof(stream_index));
  for (auto& s : state_) s = splitmix64(x);
}

SeededRng SeededRng::stream(uint64_t stream_index) const {
  return SeededRng(master_seed_, stream_index);
}

SeededRng SeededRng::stream(std::string_view kind, uint64_t ordinal) const {
  uint64_t h = fnv1a_bytes(kFnvOffset, &stream_index_, sizeof(stream_index_));
  h = fnv1a_bytes(h, kind.data(), kind.size());
  h = fnv1a_bytes(h, &ordinal, sizeof(ordinal));
  return SeededRng(master_seed_, h);
}

uint64_t SeededRng::next_u64() {
  const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double SeededRng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

uint64_t SeededRng::uniform_below(uint64_t bound) {
  if (bound == 0) throw InvalidParameterError("uniform_below: bound must be positive");
  const uint64_t threshold = -bound % bound;
  for (;;) {
    const uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

double SeededRng::gaussian(double mean, double variance) {
  if (!(variance >= 0.0)) {
    throw InvalidParameterError("gaussian: variance must be >= 0");
  }
  double z;
  if (has_spare_) {
    z = spare_;
    has_spare_ = false;
  } else {
    // Box-Muller; u1 is mapped into (0, 1] so the log is finite.
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    z = radius * std::cos(angle);
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
  }
  return mean + std::sqrt(variance) * z;
}

Eigen::VectorXd gaussian_vector(SeededRng& rng, double mean, double variance,
                                int count) {
  if (count < 0) throw InvalidParameterError("gaussian_vector: count must be >= 0");
  Eigen::VectorXd out(count);
  for (int i = 0; i < count; ++i) out[i] = rng.gaussian(mean, variance);
  return out;
}

}  // namespace distinf
