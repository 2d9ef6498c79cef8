// Copyright 2026 The viewbayes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VIEWBAYES_RNG_HPP
#define VIEWBAYES_RNG_HPP

#include <cstdint>
#include <random>

namespace viewbayes {

/// Seeded 64-bit Mersenne Twister (std::mt19937_64, whose output sequence
/// is fixed by the C++ standard). Doubles and integers are derived here
/// rather than through std::*_distribution, whose algorithms are
/// implementation-defined, so draws are identical on every platform.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound) by rejection, bias-free.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Seed of the i-th batch of a run (SplitMix64 finalizer over seed + i), so
/// consecutive batches do not share overlapping streams.
inline std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t batch) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (batch + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace viewbayes

#endif  // VIEWBAYES_RNG_HPP
