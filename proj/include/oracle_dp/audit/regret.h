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

#ifndef ORACLE_DP_AUDIT_REGRET_H_
#define ORACLE_DP_AUDIT_REGRET_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "oracle_dp/core/data_point.h"
#include "oracle_dp/core/query.h"
#include "oracle_dp/core/query_class.h"
#include "oracle_dp/core/rng.h"
#include "oracle_dp/core/separator.h"
#include "oracle_dp/oracles/oracle.h"

namespace oracle_dp {

// Per-round record of an online learner.
struct RegretTrace {
  std::vector<double> losses;
  // Running sum of `losses`.
  std::vector<double> cumulative_loss;
  // Best fixed action's cumulative loss on the first t+1 rounds.
  std::vector<double> best_in_hindsight;
  // ||Z||_inf of the perturbation used in each round, when known.
  std::vector<double> perturbation_norms;

  std::int64_t rounds() const { return static_cast<std::int64_t>(losses.size()); }
  double Regret() const;
  double AverageRegret() const;
};

// One step of a perturbed ERM on the prefix dataset (unit-weight records).
struct PermStep {
  Query query;
  double perturbation_norm = 0.0;
};
using PermMechanism = std::function<absl::StatusOr<PermStep>(
    std::span<const DataPoint> prefix, Rng& rng)>;

// max over the class of |sum_i eta_i q(e_i)|, the implicit perturbation of
// separator noise `eta`.
absl::StatusOr<double> ImplicitPerturbationNorm(const QueryClass& query_class,
                                                const SeparatorSet& separator,
                                                std::span<const double> eta);

// Laplace RSPM at `epsilon` as a pERM; an oracle Fail becomes AbortedError.
PermMechanism RspmPerm(const QueryClass& query_class, SeparatorSet separator,
                       double epsilon, WeightedOracle& oracle);

// Monte Carlo estimate of E ||Z||_inf for Laplace RSPM at `epsilon`.
absl::StatusOr<double> ExpectedPerturbationNorm(const QueryClass& query_class,
                                                const SeparatorSet& separator,
                                                double epsilon,
                                                std::int64_t samples, Rng& rng);

// Round t plays perm(x^1..x^{t-1}) with fresh noise from rng.Split(t) and
// suffers q^t(x^t).
absl::StatusOr<RegretTrace> FollowPrivateLeader(
    const QueryClass& query_class, std::span<const DataPoint> stream,
    const PermMechanism& perm, const Rng& rng);

// Data-player regret of CONTEXT-FTPL against a fixed query sequence. The
// loss of x against q is (not q)(x); each round's loss is averaged over
// `draws_per_round` samples of S^t. A nonpositive `noise_scale` selects the
// default scale for the stream length.
absl::StatusOr<RegretTrace> FtplRegret(const QueryClass& query_class,
                                       std::span<const Query> stream,
                                       double noise_scale,
                                       int draws_per_round, const Rng& rng);

// Labelled stream ((1, 0, ..., 0), y_t) for the loss-lifted class of
// dimension d, with labels repeating 1, 0, 1. The label flips on most
// rounds, so a noiseless leader is often wrong, while hypotheses that output
// 1 on the point are best overall.
std::vector<DataPoint> AlternatingLabelStream(int dim, std::int64_t rounds);

// Query stream for the data player: cycles through the non-constant
// members of the class, negating them in alternate blocks of three.
absl::StatusOr<std::vector<Query>> AdversarialQueryStream(
    const QueryClass& query_class, std::int64_t rounds);

}  // namespace oracle_dp

#endif  // ORACLE_DP_AUDIT_REGRET_H_
