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

#include "oracle_dp/audit/regret.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "oracle_dp/core/separator.h"
#include "oracle_dp/mechanisms/rspm.h"
#include "oracle_dp/oracles/dual_oracle.h"
#include "oracle_dp/synthgen/ftpl.h"

namespace oracle_dp {
namespace {

void Append(RegretTrace& trace, double loss, double best) {
  trace.losses.push_back(loss);
  const double prev =
      trace.cumulative_loss.empty() ? 0.0 : trace.cumulative_loss.back();
  trace.cumulative_loss.push_back(prev + loss);
  trace.best_in_hindsight.push_back(best);
}

}  // namespace

double RegretTrace::Regret() const {
  if (losses.empty()) return 0.0;
  return cumulative_loss.back() - best_in_hindsight.back();
}

double RegretTrace::AverageRegret() const {
  return losses.empty() ? 0.0 : Regret() / rounds();
}

absl::StatusOr<double> ImplicitPerturbationNorm(const QueryClass& query_class,
                                                const SeparatorSet& separator,
                                                std::span<const double> eta) {
  if (eta.size() != separator.elements.size()) {
    return absl::InvalidArgumentError("noise length differs from separator size");
  }
  absl::StatusOr<std::span<const Query>> members = query_class.Members();
  if (!members.ok()) return members.status();
  double norm = 0.0;
  for (const Query& q : *members) {
    double z = 0.0;
    for (std::size_t i = 0; i < eta.size(); ++i) {
      if (q.Evaluate(separator.elements[i])) z += eta[i];
    }
    norm = std::max(norm, std::abs(z));
  }
  return norm;
}

PermMechanism RspmPerm(const QueryClass& query_class, SeparatorSet separator,
                       double epsilon, WeightedOracle& oracle) {
  return [query_class, separator = std::move(separator), epsilon, &oracle](
             std::span<const DataPoint> prefix,
             Rng& rng) -> absl::StatusOr<PermStep> {
    RspmInput input{UniformlyWeighted(prefix, 1.0), {}};
    absl::StatusOr<MechanismOutput> out =
        Rspm(input, separator, epsilon, oracle, rng);
    if (!out.ok()) return out.status();
    if (out->failed()) return absl::AbortedError("oracle failed");
    absl::StatusOr<double> norm =
        ImplicitPerturbationNorm(query_class, separator, out->noise_trace);
    if (!norm.ok()) return norm.status();
    return PermStep{*out->query, *norm};
  };
}

absl::StatusOr<double> ExpectedPerturbationNorm(const QueryClass& query_class,
                                                const SeparatorSet& separator,
                                                double epsilon,
                                                std::int64_t samples, Rng& rng) {
  if (!(epsilon > 0) || samples < 1) {
    return absl::InvalidArgumentError("need epsilon > 0 and samples >= 1");
  }
  const double scale = separator.size() / epsilon;
  std::vector<double> eta(separator.size());
  double total = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    for (double& e : eta) e = rng.Laplace(scale);
    absl::StatusOr<double> norm =
        ImplicitPerturbationNorm(query_class, separator, eta);
    if (!norm.ok()) return norm.status();
    total += *norm;
  }
  return total / samples;
}

absl::StatusOr<RegretTrace> FollowPrivateLeader(
    const QueryClass& query_class, std::span<const DataPoint> stream,
    const PermMechanism& perm, const Rng& rng) {
  absl::StatusOr<std::span<const Query>> members = query_class.Members();
  if (!members.ok()) return members.status();
  for (const DataPoint& x : stream) {
    if (x.dim() != query_class.domain_dim()) {
      return absl::InvalidArgumentError(
          absl::StrCat("stream point of dimension ", x.dim(),
                       " for a class over dimension ", query_class.domain_dim()));
    }
  }
  std::vector<double> member_loss(members->size(), 0.0);
  RegretTrace trace;
  for (std::size_t t = 0; t < stream.size(); ++t) {
    Rng round_rng = rng.Split(t);
    absl::StatusOr<PermStep> step = perm(stream.first(t), round_rng);
    if (!step.ok()) return step.status();
    for (std::size_t j = 0; j < members->size(); ++j) {
      member_loss[j] += (*members)[j].Evaluate(stream[t]);
    }
    Append(trace, step->query.Evaluate(stream[t]),
           *std::min_element(member_loss.begin(), member_loss.end()));
    trace.perturbation_norms.push_back(step->perturbation_norm);
  }
  return trace;
}

absl::StatusOr<RegretTrace> FtplRegret(const QueryClass& query_class,
                                       std::span<const Query> stream,
                                       double noise_scale,
                                       int draws_per_round, const Rng& rng) {
  if (draws_per_round < 1) {
    return absl::InvalidArgumentError("draws_per_round must be >= 1");
  }
  absl::StatusOr<DualClass> dual = DualView(query_class);
  if (!dual.ok()) return dual.status();
  absl::StatusOr<std::span<const DataPoint>> universe = query_class.Universe();
  if (!universe.ok()) return universe.status();
  const std::int64_t rounds = static_cast<std::int64_t>(stream.size());
  if (noise_scale <= 0) {
    noise_scale = DefaultFtplNoiseScale(dual->separator_size(),
                                        query_class.log_universe_size(),
                                        std::max<std::int64_t>(rounds, 1));
  }
  ExactDualOracle oracle(query_class);
  ContextFtpl ftpl(dual->separator, noise_scale, oracle);
  std::vector<double> point_loss(universe->size(), 0.0);
  RegretTrace trace;
  for (std::int64_t t = 0; t < rounds; ++t) {
    Rng round_rng = rng.Split(t);
    double loss = 0.0;
    for (int k = 0; k < draws_per_round; ++k) {
      absl::StatusOr<DataPoint> x = ftpl.Draw(round_rng);
      if (!x.ok()) return x.status();
      loss += 1 - stream[t].Evaluate(*x);
    }
    for (std::size_t j = 0; j < universe->size(); ++j) {
      point_loss[j] += 1 - stream[t].Evaluate((*universe)[j]);
    }
    Append(trace, loss / draws_per_round,
           *std::min_element(point_loss.begin(), point_loss.end()));
    ftpl.Observe(stream[t]);
  }
  return trace;
}

std::vector<DataPoint> AlternatingLabelStream(int dim, std::int64_t rounds) {
  std::vector<DataPoint> out;
  out.reserve(rounds);
  for (std::int64_t t = 0; t < rounds; ++t) {
    std::vector<double> v(dim + 1, 0.0);
    v[0] = 1.0;
    v[dim] = t % 3 == 1 ? 0.0 : 1.0;
    out.emplace_back(std::move(v));
  }
  return out;
}

absl::StatusOr<std::vector<Query>> AdversarialQueryStream(
    const QueryClass& query_class, std::int64_t rounds) {
  absl::StatusOr<std::span<const Query>> members = query_class.Members();
  if (!members.ok()) return members.status();
  absl::StatusOr<std::span<const DataPoint>> universe = query_class.Universe();
  if (!universe.ok()) return universe.status();
  std::vector<Query> varying;
  for (const Query& q : *members) {
    int ones = 0;
    for (const DataPoint& x : *universe) ones += q.Evaluate(x);
    if (ones > 0 && ones < static_cast<int>(universe->size())) varying.push_back(q);
  }
  if (varying.empty()) {
    return absl::InvalidArgumentError("class has no non-constant member");
  }
  std::vector<Query> out;
  out.reserve(rounds);
  for (std::int64_t t = 0; t < rounds; ++t) {
    const Query& q = varying[t % varying.size()];
    out.push_back((t / 3) % 2 == 1 ? q.Negated() : q);
  }
  return out;
}

}  // namespace oracle_dp
