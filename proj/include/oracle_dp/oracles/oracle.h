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

#ifndef ORACLE_DP_ORACLES_ORACLE_H_
#define ORACLE_DP_ORACLES_ORACLE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/statusor.h"
#include "oracle_dp/core/data_point.h"
#include "oracle_dp/core/query.h"
#include "oracle_dp/core/query_class.h"
#include "oracle_dp/core/rng.h"

namespace oracle_dp {

// Result of one oracle call: a query with its weighted objective, or Fail.
struct OracleAnswer {
  std::optional<Query> query;
  double objective = 0.0;
  std::int64_t calls_consumed = 1;

  bool failed() const { return !query.has_value(); }
  static OracleAnswer Fail() { return OracleAnswer{}; }
};

// A weighted optimization oracle: returns a member of argmin_q sum_i w_i
// q(x_i), or (for heuristics) Fail / a wrong member. Implementations that
// randomize own their random stream, so an algorithm's randomness is never
// shifted by the oracle's.
class WeightedOracle {
 public:
  virtual ~WeightedOracle() = default;
  virtual absl::StatusOr<OracleAnswer> Solve(const WeightedDataset& wd) = 0;
  std::int64_t calls() const { return calls_; }

 protected:
  std::int64_t calls_ = 0;
};

// Brute-force argmin over an enumerable class. Ties (exact float equality)
// go to the smallest canonical encoding.
class ExactOracle : public WeightedOracle {
 public:
  explicit ExactOracle(QueryClass query_class)
      : query_class_(std::move(query_class)) {}

  absl::StatusOr<OracleAnswer> Solve(const WeightedDataset& wd) override;

  // Pure form of Solve().
  static absl::StatusOr<OracleAnswer> Minimize(const QueryClass& query_class,
                                               const WeightedDataset& wd);

 private:
  QueryClass query_class_;
};

// When a heuristic oracle misbehaves.
class FailurePolicy {
 public:
  enum class Mode { kNever, kBernoulli, kScheduledCalls, kTrigger };
  using Predicate = std::function<bool(const WeightedDataset&)>;

  static FailurePolicy Never();
  static absl::StatusOr<FailurePolicy> Bernoulli(double p);
  // 1-based call indices.
  static FailurePolicy ScheduledCalls(std::set<std::int64_t> calls);
  static FailurePolicy Trigger(Predicate predicate, std::string description);
  // Fails whenever `point` appears in the weighted dataset.
  static FailurePolicy TriggerOnPoint(DataPoint point);

  // never | bernoulli:p | calls:i,j,k | trigger | trigger:v1,...,vd
  // A bare "trigger" fails on the all-zeros point of dimension `dim`.
  static absl::StatusOr<FailurePolicy> Parse(absl::string_view text, int dim);

  Mode mode() const { return mode_; }
  // Decides call number `call_index` (1-based); may consume `rng`.
  bool Triggers(std::int64_t call_index, const WeightedDataset& wd,
                Rng& rng) const;
  std::string ToString() const { return description_; }

 private:
  FailurePolicy() = default;

  Mode mode_ = Mode::kNever;
  double p_ = 0.0;
  std::set<std::int64_t> calls_;
  Predicate predicate_;
  std::string description_ = "never";
};

// Certifiable heuristic: Fail when the policy triggers, otherwise the exact
// answer. Never returns a non-minimizing query.
class CertifiableOracle : public WeightedOracle {
 public:
  CertifiableOracle(QueryClass query_class, FailurePolicy policy, Rng rng)
      : query_class_(std::move(query_class)),
        policy_(std::move(policy)),
        rng_(std::move(rng)) {}

  absl::StatusOr<OracleAnswer> Solve(const WeightedDataset& wd) override;

 private:
  QueryClass query_class_;
  FailurePolicy policy_;
  Rng rng_;
};

// Maps the true argmin to the member returned on a corrupted call.
using CorruptionRule =
    std::function<Query(const Query& argmin, std::span<const Query> members)>;
Query LexicographicallyLast(const Query& argmin, std::span<const Query> members);

// Non-certifiable heuristic: never fails; on trigger returns the corruption
// rule's member, which may be arbitrarily suboptimal.
class NonCertifiableOracle : public WeightedOracle {
 public:
  NonCertifiableOracle(QueryClass query_class, FailurePolicy policy,
                       CorruptionRule corruption, Rng rng)
      : query_class_(std::move(query_class)),
        policy_(std::move(policy)),
        corruption_(std::move(corruption)),
        rng_(std::move(rng)) {}

  absl::StatusOr<OracleAnswer> Solve(const WeightedDataset& wd) override;

 private:
  QueryClass query_class_;
  FailurePolicy policy_;
  CorruptionRule corruption_;
  Rng rng_;
};

// An oracle-dependent algorithm whose randomness comes only from `rng`.
// Returns nullopt when an oracle call failed.
using OracleAlgorithm = std::function<absl::StatusOr<std::optional<Query>>(
    const Dataset& s, Rng& rng, WeightedOracle& oracle)>;

struct CoupledOutcome {
  // Output of the run in which every failed call was answered exactly.
  Query ideal;
  // Output of the heuristic run; nullopt (Fail) if any call failed.
  std::optional<Query> heuristic;
  std::int64_t failed_calls = 0;
};

// Runs `algorithm` once on (s, seed) with the heuristic oracle; each Fail is
// recorded for the heuristic side and replaced by the exact answer so the
// ideal side continues. When no call fails the two outputs coincide.
absl::StatusOr<CoupledOutcome> CoupledRun(const OracleAlgorithm& algorithm,
                                          const Dataset& s, std::uint64_t seed,
                                          const QueryClass& query_class,
                                          WeightedOracle& heuristic);

}  // namespace oracle_dp

#endif  // ORACLE_DP_ORACLES_ORACLE_H_
