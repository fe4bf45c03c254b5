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

#include "oracle_dp/prsma/prsma.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "oracle_dp/mechanisms/rspm.h"

namespace oracle_dp {
namespace {

constexpr std::uint64_t kPartitionStream = 0;
constexpr std::uint64_t kAggregateStream = 1;
constexpr std::uint64_t kFirstInnerStream = 2;

}  // namespace

absl::StatusOr<PrsmaParams> DerivePrsmaParams(const PrsmaConfig& cfg, int n) {
  PrsmaParams p;
  p.eps_run = cfg.raw ? cfg.epsilon_target
                      : cfg.epsilon_target / kPrsmaEpsilonDivisor;
  p.delta_run =
      cfg.raw ? cfg.delta_target : cfg.delta_target / kPrsmaDeltaDivisor;
  if (!(p.eps_run > 0.0 && p.eps_run <= 0.5)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "internal epsilon ", p.eps_run, " must lie in (0, 1/2]"));
  }
  if (!(p.delta_run > 0.0 && p.delta_run <= 0.5)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "internal delta ", p.delta_run, " must lie in (0, 1/2]"));
  }
  if (cfg.reps_cap < 1) return absl::InvalidArgumentError("reps cap must be >= 1");
  const double k_real = (1.0 / p.eps_run) * (1.0 + std::log(2.0 / p.delta_run));
  p.partitions = static_cast<int>(std::ceil(k_real));
  const double reps_real =
      std::ceil(std::log(p.partitions / p.delta_run) / p.delta_run);
  if (reps_real > static_cast<double>(cfg.reps_cap)) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "PRSMA needs ", reps_real, " repetitions per part, above the cap of ",
        cfg.reps_cap));
  }
  p.reps = static_cast<std::int64_t>(reps_real);
  if (n < p.partitions) {
    return absl::InvalidArgumentError(absl::StrCat(
        "PRSMA needs at least n = K = ", p.partitions, " records, got ", n));
  }
  p.part_size = n / p.partitions;
  p.eps_prime = 1.0 / std::sqrt(8.0 * p.part_size *
                                std::log(2.0 * p.partitions / p.delta_run));
  p.threshold = (1.0 / p.eps_run) * (1.0 + std::log(1.0 / p.delta_run));
  return p;
}

Rng PrsmaInnerStream(const Rng& base, int part, std::int64_t rep,
                     std::int64_t reps) {
  return base.Split(kFirstInnerStream +
                    static_cast<std::uint64_t>(part) *
                        static_cast<std::uint64_t>(reps) +
                    static_cast<std::uint64_t>(rep));
}

WeightedDataset PartRecords(const WeightedDataset& records,
                            const PrsmaOutcome& outcome, int part) {
  WeightedDataset out;
  out.reserve(outcome.partition[part].size());
  for (int idx : outcome.partition[part]) out.push_back(records[idx]);
  return out;
}

absl::StatusOr<PrsmaOutcome> Prsma(const PrsmaInner& inner,
                                   const WeightedDataset& records,
                                   const PrsmaConfig& cfg,
                                   WeightedOracle& oracle, const Rng& rng) {
  const int n = static_cast<int>(records.size());
  absl::StatusOr<PrsmaParams> params = DerivePrsmaParams(cfg, n);
  if (!params.ok()) return params.status();
  PrsmaOutcome outcome;
  outcome.params = *params;
  const int k = params->partitions;

  // Uniform shuffle; the first n mod K positions are discarded, the rest cut
  // into K consecutive chunks.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng partition_rng = rng.Split(kPartitionStream);
  std::shuffle(order.begin(), order.end(), partition_rng.engine());
  const int discard = n % k;
  outcome.discarded.assign(order.begin(), order.begin() + discard);
  outcome.partition.resize(k);
  for (int i = 0; i < k; ++i) {
    auto begin = order.begin() + discard + i * params->part_size;
    outcome.partition[i].assign(begin, begin + params->part_size);
  }

  std::vector<std::vector<Query>> outputs(k);
  for (int i = 0; i < k; ++i) {
    const WeightedDataset part = PartRecords(records, outcome, i);
    bool ok = true;
    for (std::int64_t t = 0; t < params->reps; ++t) {
      Rng inner_rng = PrsmaInnerStream(rng, i, t, params->reps);
      absl::StatusOr<std::optional<Query>> a =
          inner(part, params->eps_prime, inner_rng, oracle);
      ++outcome.inner_invocations;
      if (!a.ok()) return a.status();
      if (!a->has_value()) {
        ok = false;
      } else if (ok) {
        outputs[i].push_back(**a);
      }
    }
    if (ok) {
      outcome.surviving.push_back(i);
    } else {
      outputs[i].clear();
    }
  }

  Rng aggregate_rng = rng.Split(kAggregateStream);
  outcome.pass_count = static_cast<int>(outcome.surviving.size());
  outcome.noisy_count =
      outcome.pass_count + aggregate_rng.Laplace(1.0 / params->eps_run);
  if (outcome.noisy_count <= params->threshold || outcome.surviving.empty()) {
    return outcome;
  }
  // Every surviving part stores reps outputs, so a uniform stored output is a
  // uniform surviving part and a uniform repetition.
  const std::uint64_t pick =
      aggregate_rng.UniformInt(outcome.surviving.size() * params->reps);
  outcome.chosen_part = outcome.surviving[pick / params->reps];
  outcome.chosen_rep = static_cast<std::int64_t>(pick % params->reps);
  outcome.result = outputs[outcome.chosen_part][outcome.chosen_rep];
  return outcome;
}

PrsmaInner RspmInner(SeparatorSet separator) {
  return [separator = std::move(separator)](
             const WeightedDataset& part, double epsilon, Rng& rng,
             WeightedOracle& oracle) -> absl::StatusOr<std::optional<Query>> {
    absl::StatusOr<MechanismOutput> out =
        Rspm(RspmInput{part, {}}, separator, epsilon, oracle, rng);
    if (!out.ok()) return out.status();
    return out->query;
  };
}

absl::StatusOr<PrsmaOutcome> PrsmaRspm(const Dataset& s,
                                       const SeparatorSet& separator,
                                       const PrsmaConfig& cfg,
                                       WeightedOracle& oracle, const Rng& rng) {
  return Prsma(RspmInner(separator), UniformlyWeighted(s.points(), 1.0), cfg,
               oracle, rng);
}

double PrsmaRspmAccuracyBound(int m, double log_class_size, int n,
                              double epsilon, double delta, double beta) {
  const double slack = beta - delta;
  const double log_inv_delta = std::log(1.0 / delta);
  const double first = static_cast<double>(m) * m * std::log(m / slack) *
                       log_inv_delta;
  const double second =
      std::sqrt(log_inv_delta * (log_class_size - std::log(slack)));
  return (first + second) / std::sqrt(n * epsilon);
}

}  // namespace oracle_dp
