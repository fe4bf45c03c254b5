// Copyright 2026 The Oracle DP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ORACLE_DP_CORE_RNG_H_
#define ORACLE_DP_CORE_RNG_H_

#include <cstdint>
#include <random>

namespace oracle_dp {

// Seeded, splittable random stream. Every draw in the library descends from
// one root seed: child streams are derived by mixing the parent seed with a
// stream index, so task-parallel code is reproducible regardless of
// scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(Mix(seed)) {}

  std::uint64_t seed() const { return seed_; }

  // Independent child stream; does not advance this stream.
  Rng Split(std::uint64_t stream) const {
    return Rng(Mix(seed_ ^ Mix(stream + 0x9e3779b97f4a7c15ULL)));
  }

  // Uniform on [0, 1).
  double Uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  // Uniform on {0, ..., n - 1}; n >= 1.
  std::uint64_t UniformInt(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }
  bool Bernoulli(double p) { return Uniform() < p; }

  // Lap(scale), density (1/2b) exp(-|z|/b); unchecked.
  double Laplace(double scale) {
    const double e = std::exponential_distribution<double>(1.0)(engine_);
    return Uniform() < 0.5 ? -scale * e : scale * e;
  }
  // N(0, sigma^2); unchecked.
  double Gaussian(double sigma) {
    return std::normal_distribution<double>(0.0, sigma)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  // SplitMix64 finalizer.
  static std::uint64_t Mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace oracle_dp

#endif  // ORACLE_DP_CORE_RNG_H_
