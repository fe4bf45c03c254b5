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

#ifndef ORACLE_DP_SYNTHGEN_FTPL_H_
#define ORACLE_DP_SYNTHGEN_FTPL_H_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "oracle_dp/core/data_point.h"
#include "oracle_dp/core/query.h"
#include "oracle_dp/core/rng.h"
#include "oracle_dp/oracles/dual_oracle.h"

namespace oracle_dp {

// Laplace scale of the separator perturbations for a T-round horizon. The
// rate sqrt(m2 ln|X| / T) is inverted into a scale, which grows as sqrt(T).
double DefaultFtplNoiseScale(int m2, double log_universe, std::int64_t rounds);

// Follow-the-perturbed-leader data player over the dual class. After
// observing queries q^1..q^t it samples
//   x = argmin_x sum_tau (not q^tau)(x) + sum_{s in U} eta_s s(x)
// with fresh eta_s ~ Lap(noise_scale), one dual oracle call per sample.
class ContextFtpl {
 public:
  ContextFtpl(std::vector<Query> dual_separator, double noise_scale,
              DualOracle& oracle)
      : separator_(std::move(dual_separator)),
        noise_scale_(noise_scale),
        oracle_(&oracle) {}

  void Observe(const Query& q);
  std::int64_t observed() const { return observed_; }

  // One draw from the current distribution S^t. `eta`, when given, replaces
  // the Laplace draws.
  absl::StatusOr<DataPoint> Draw(Rng& rng);
  absl::StatusOr<DataPoint> DrawWithNoise(std::span<const double> eta);

  // Cumulative loss sum_tau (not q^tau)(x) of a fixed point.
  double CumulativeLoss(const DataPoint& x) const;

  const std::vector<Query>& separator() const { return separator_; }
  double noise_scale() const { return noise_scale_; }

 private:
  std::vector<Query> separator_;
  double noise_scale_;
  DualOracle* oracle_;
  // Negated observed queries with multiplicities.
  std::map<Query, std::int64_t> history_;
  std::int64_t observed_ = 0;
};

}  // namespace oracle_dp

#endif  // ORACLE_DP_SYNTHGEN_FTPL_H_
