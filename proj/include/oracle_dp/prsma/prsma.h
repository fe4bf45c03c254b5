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

#ifndef ORACLE_DP_PRSMA_PRSMA_H_
#define ORACLE_DP_PRSMA_PRSMA_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "oracle_dp/core/data_point.h"
#include "oracle_dp/core/query.h"
#include "oracle_dp/core/query_class.h"
#include "oracle_dp/core/rng.h"
#include "oracle_dp/core/separator.h"
#include "oracle_dp/oracles/oracle.h"

namespace oracle_dp {

inline constexpr double kPrsmaEpsilonDivisor = 62.0;
inline constexpr double kPrsmaDeltaDivisor = 11.0;
inline constexpr std::int64_t kDefaultRepsCap = 100000;

struct PrsmaConfig {
  double epsilon_target = 1.0;
  double delta_target = 0.1;
  // Treat the targets as the internal run parameters (no 62/11 division).
  bool raw = false;
  std::int64_t reps_cap = kDefaultRepsCap;
};

struct PrsmaParams {
  double eps_run = 0.0;
  double delta_run = 0.0;
  int partitions = 0;  // K
  std::int64_t reps = 0;
  int part_size = 0;
  double eps_prime = 0.0;
  // Pass/fail cut for the noisy count: (1/eps_run)(1 + ln(1/delta_run)).
  double threshold = 0.0;
};

// Validates the config and derives the internal parameters for n records:
//   K = ceil((1/eps_run)(1 + ln(2/delta_run)))
//   reps = ceil(ln(K/delta_run)/delta_run)
//   eps_prime = 1/sqrt(8 (n/K) ln(2K/delta_run)), n/K the part size
// Errors: eps_run or delta_run outside (0, 1/2], n < K (input errors);
// reps above the cap (capacity error).
absl::StatusOr<PrsmaParams> DerivePrsmaParams(const PrsmaConfig& cfg, int n);

// The wrapped algorithm: runs on one part of the private records at privacy
// level epsilon. Returns nullopt when an oracle call failed.
using PrsmaInner = std::function<absl::StatusOr<std::optional<Query>>(
    const WeightedDataset& part, double epsilon, Rng& rng,
    WeightedOracle& oracle)>;

struct PrsmaOutcome {
  std::optional<Query> result;
  PrsmaParams params;
  int pass_count = 0;        // T
  double noisy_count = 0.0;  // T + Lap(1/eps_run)
  std::vector<int> surviving;
  // Record indices of each part, and those discarded before partitioning.
  std::vector<std::vector<int>> partition;
  std::vector<int> discarded;
  int chosen_part = -1;
  std::int64_t chosen_rep = -1;
  std::int64_t inner_invocations = 0;

  bool failed() const { return !result.has_value(); }
};

// Random stream of inner run `rep` on part `part`, derived from the stream
// handed to Prsma(). Exposed for replay.
Rng PrsmaInnerStream(const Rng& base, int part, std::int64_t rep,
                     std::int64_t reps);

// Splits the records into K equal random parts (after discarding n mod K at
// random), runs `inner` reps times per part, and releases one stored output
// of a part without failures if the noisy pass count clears the threshold.
absl::StatusOr<PrsmaOutcome> Prsma(const PrsmaInner& inner,
                                   const WeightedDataset& records,
                                   const PrsmaConfig& cfg,
                                   WeightedOracle& oracle, const Rng& rng);

// The records of part `i` of an outcome, in partition order.
WeightedDataset PartRecords(const WeightedDataset& records,
                            const PrsmaOutcome& outcome, int part);

// Inner algorithm running Laplace RSPM on the part.
PrsmaInner RspmInner(SeparatorSet separator);

// PRSMA wrapped around RSPM with a certifiable heuristic oracle.
absl::StatusOr<PrsmaOutcome> PrsmaRspm(const Dataset& s,
                                       const SeparatorSet& separator,
                                       const PrsmaConfig& cfg,
                                       WeightedOracle& oracle, const Rng& rng);

// Accuracy expression of PRSMA around RSPM with unit constants, for privacy
// (eps, delta), failure probability beta > delta and class size |Q|:
//   (m^2 ln(m/(beta-delta)) ln(1/delta)
//      + sqrt(ln(1/delta) ln(|Q|/(beta-delta)))) / sqrt(n eps)
double PrsmaRspmAccuracyBound(int m, double log_class_size, int n,
                              double epsilon, double delta, double beta);

}  // namespace oracle_dp

#endif  // ORACLE_DP_PRSMA_PRSMA_H_
