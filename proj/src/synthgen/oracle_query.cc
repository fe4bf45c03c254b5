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

#include "oracle_dp/synthgen/oracle_query.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "oracle_dp/mechanisms/noise.h"
#include "oracle_dp/mechanisms/rspm.h"
#include "oracle_dp/synthgen/game.h"

namespace oracle_dp {
namespace {

// Multiplies weights by `factor`; weights that land within rounding of +-1
// are snapped so the unit-weight check of RSPM holds exactly.
WeightedDataset Rescaled(const WeightedDataset& wd, double factor) {
  WeightedDataset out = wd;
  for (WeightedEntry& e : out) {
    e.weight *= factor;
    if (std::abs(std::abs(e.weight) - 1.0) < 1e-9) {
      e.weight = std::copysign(1.0, e.weight);
    }
  }
  return out;
}

using RspmCall = std::function<absl::StatusOr<MechanismOutput>(
    const RspmInput&, const RoundBudget&, Rng&)>;

PrivateMinimizer RescaledRspm(RspmCall call) {
  return [call = std::move(call)](
             const WeightedDataset& private_part,
             const WeightedDataset& public_part, const RoundBudget& budget,
             Rng& rng) -> absl::StatusOr<std::optional<Query>> {
    const double n = static_cast<double>(private_part.size());
    if (n < 1) return absl::InvalidArgumentError("empty private dataset");
    absl::StatusOr<MechanismOutput> out = call(
        RspmInput{Rescaled(private_part, n), Rescaled(public_part, n)}, budget,
        rng);
    if (!out.ok()) return out.status();
    return out->query;
  };
}

constexpr std::uint64_t kRoundStreams = 1;
constexpr std::uint64_t kTauStream = 2;
constexpr std::uint64_t kFinalDrawStreams = 3;

}  // namespace

PrivateMinimizer ExactMinimizer(QueryClass query_class) {
  return [query_class = std::move(query_class)](
             const WeightedDataset& private_part,
             const WeightedDataset& public_part, const RoundBudget&,
             Rng&) -> absl::StatusOr<std::optional<Query>> {
    WeightedDataset wd = private_part;
    wd.insert(wd.end(), public_part.begin(), public_part.end());
    absl::StatusOr<OracleAnswer> a = ExactOracle::Minimize(query_class, wd);
    if (!a.ok()) return a.status();
    return a->query;
  };
}

PrivateMinimizer RspmMinimizer(SeparatorSet separator, WeightedOracle& oracle) {
  return RescaledRspm([separator = std::move(separator), &oracle](
                          const RspmInput& input, const RoundBudget& budget,
                          Rng& rng) {
    return Rspm(input, separator, budget.epsilon0, oracle, rng);
  });
}

PrivateMinimizer GaussianRspmMinimizer(SeparatorSet separator,
                                       WeightedOracle& oracle) {
  return RescaledRspm([separator = std::move(separator), &oracle](
                          const RspmInput& input, const RoundBudget& budget,
                          Rng& rng) {
    return RspmGaussian(input, separator, budget.epsilon0, budget.delta0,
                        oracle, rng);
  });
}

PrivateMinimizer PrsmaMinimizer(SeparatorSet separator, WeightedOracle& oracle,
                                std::int64_t reps_cap) {
  return [separator = std::move(separator), &oracle, reps_cap](
             const WeightedDataset& private_part,
             const WeightedDataset& public_part, const RoundBudget& budget,
             Rng& rng) -> absl::StatusOr<std::optional<Query>> {
    const double n = static_cast<double>(private_part.size());
    PrsmaInner inner = [&](const WeightedDataset& part, double epsilon,
                           Rng& inner_rng, WeightedOracle& o)
        -> absl::StatusOr<std::optional<Query>> {
      absl::StatusOr<MechanismOutput> out =
          Rspm(RspmInput{Rescaled(part, n),
                         Rescaled(public_part, static_cast<double>(part.size()))},
               separator, epsilon, o, inner_rng);
      if (!out.ok()) return out.status();
      return out->query;
    };
    PrsmaConfig cfg{budget.epsilon0, budget.delta0, false, reps_cap};
    absl::StatusOr<PrsmaOutcome> out =
        Prsma(inner, private_part, cfg, oracle, rng);
    if (!out.ok()) return out.status();
    return out->result;
  };
}

std::int64_t PbrSampleCount(double log_class_size, double alpha0, double beta0) {
  return static_cast<std::int64_t>(std::ceil(
      2.0 * (std::log(2.0) + log_class_size - std::log(beta0)) /
      (alpha0 * alpha0)));
}

absl::StatusOr<PbrOutcome> PrivateBestResponse(
    const Dataset& s,
    const std::function<absl::StatusOr<DataPoint>(Rng&)>& sampler,
    double log_class_size, const PbrConfig& cfg,
    const PrivateMinimizer& minimizer, Rng& rng) {
  if (!(cfg.alpha0 > 0.0) || !(cfg.beta0 > 0.0 && cfg.beta0 < 1.0)) {
    return absl::InvalidArgumentError("alpha0 > 0 and beta0 in (0, 1) required");
  }
  const std::int64_t n_samples =
      PbrSampleCount(log_class_size, cfg.alpha0, cfg.beta0);
  std::vector<DataPoint> proxy;
  proxy.reserve(n_samples);
  Rng sample_rng = rng.Split(0);
  for (std::int64_t j = 0; j < n_samples; ++j) {
    absl::StatusOr<DataPoint> x = sampler(sample_rng);
    if (!x.ok()) return x.status();
    proxy.push_back(*std::move(x));
  }

  const double n = static_cast<double>(s.size());
  const double big_n = static_cast<double>(n_samples);
  // q1 minimizes q(S_hat) - q(S); q2 negates the minimizer of q(S) - q(S_hat).
  WeightedDataset private1 = UniformlyWeighted(s.points(), -1.0 / n);
  WeightedDataset public1 = UniformlyWeighted(proxy, 1.0 / big_n);
  WeightedDataset private2 = UniformlyWeighted(s.points(), 1.0 / n);
  WeightedDataset public2 = UniformlyWeighted(proxy, -1.0 / big_n);
  Rng rng1 = rng.Split(1);
  Rng rng2 = rng.Split(2);
  absl::StatusOr<std::optional<Query>> a1 =
      minimizer(private1, public1, cfg.budget, rng1);
  if (!a1.ok()) return a1.status();
  absl::StatusOr<std::optional<Query>> a2 =
      minimizer(private2, public2, cfg.budget, rng2);
  if (!a2.ok()) return a2.status();

  PbrOutcome out;
  out.samples = n_samples;
  if (!a1->has_value() || !a2->has_value()) return out;
  out.candidate1 = **a1;
  out.candidate2 = (*a2)->Negated();
  out.payoff1 = MixedPayoff(s.points(), proxy, *out.candidate1);
  out.payoff2 = MixedPayoff(s.points(), proxy, *out.candidate2);
  const double scale =
      cfg.selection_scale.value_or(1.0 / (cfg.budget.epsilon0 * n));
  Rng select_rng = rng.Split(3);
  const double payoffs[2] = {out.payoff1, out.payoff2};
  absl::StatusOr<std::size_t> pick = ReportNoisyMax(payoffs, scale, select_rng);
  if (!pick.ok()) return pick.status();
  out.query = *pick == 0 ? out.candidate1 : out.candidate2;
  return out;
}

absl::StatusOr<Instantiation> ParseInstantiation(absl::string_view name) {
  for (Instantiation i : {Instantiation::kPrivateOracle,
                          Instantiation::kGaussianRspm, Instantiation::kPrsma}) {
    if (name == InstantiationName(i)) return i;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown preset '", name, "'"));
}

absl::string_view InstantiationName(Instantiation inst) {
  switch (inst) {
    case Instantiation::kPrivateOracle:
      return "private-oracle";
    case Instantiation::kGaussianRspm:
      return "gaussian-rspm";
    case Instantiation::kPrsma:
      return "prsma";
  }
  return "?";
}

std::int64_t PresetRounds(Instantiation inst, const ProblemSizes& z) {
  const double m2_34 = std::pow(static_cast<double>(z.m2), 0.75);
  const double n_eps = z.n * z.epsilon;
  double t = 1.0;
  switch (inst) {
    case Instantiation::kPrivateOracle:
      t = n_eps * m2_34 * std::sqrt(z.log_universe) /
          ((z.log_class - std::log(z.beta)) * std::sqrt(std::log(1.0 / z.delta)));
      break;
    case Instantiation::kGaussianRspm:
      t = m2_34 * std::sqrt(z.log_universe) * n_eps /
          (std::pow(static_cast<double>(z.m1), 1.5) *
           std::sqrt(std::log(z.m1 / z.beta)) * std::log(1.0 / z.delta));
      break;
    case Instantiation::kPrsma:
      t = std::pow(m2_34 * std::sqrt(z.log_universe * n_eps) /
                       (static_cast<double>(z.m1) * z.m1 +
                        std::sqrt(z.log_class)),
                   4.0 / 3.0);
      break;
  }
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(t)));
}

double PresetAlpha(Instantiation inst, const ProblemSizes& z) {
  const double m2_34 = std::pow(static_cast<double>(z.m2), 0.75);
  const double n_eps = z.n * z.epsilon;
  double a = 1.0;
  switch (inst) {
    case Instantiation::kPrivateOracle:
      a = std::sqrt(m2_34 *
                    std::sqrt(z.log_universe * std::log(1.0 / z.delta)) *
                    (z.log_class - std::log(z.beta)) / n_eps);
      break;
    case Instantiation::kGaussianRspm:
      a = std::sqrt(std::pow(static_cast<double>(z.m1), 1.5) * m2_34 *
                    std::sqrt(std::log(z.m1 / z.beta) * z.log_universe) *
                    std::log(1.0 / z.delta) / n_eps);
      break;
    case Instantiation::kPrsma:
      a = std::pow(static_cast<double>(z.m2), 0.25) *
          std::pow(z.log_universe, 1.0 / 6.0) *
          (std::pow(static_cast<double>(z.m1), 4.0 / 3.0) +
           std::cbrt(z.log_class)) /
          std::cbrt(n_eps);
      break;
  }
  return std::clamp(a, 1e-6, 1.0);
}

std::int64_t SyntheticSampleCount(double log_class_size, double alpha0,
                                  double beta) {
  return static_cast<std::int64_t>(std::ceil(
      2.0 * (std::log(8.0) + log_class_size - std::log(beta)) /
      (alpha0 * alpha0)));
}

absl::StatusOr<OracleQueryResult> OracleQuery(const Dataset& s,
                                              const QueryClass& query_class,
                                              const OracleQueryConfig& cfg,
                                              DualOracle& dual_oracle,
                                              const PrivateMinimizer& minimizer,
                                              const Rng& rng) {
  if (cfg.rounds < 1) return absl::InvalidArgumentError("T must be >= 1");
  if (!(cfg.epsilon > 0.0) || !(cfg.delta > 0.0 && cfg.delta < 1.0) ||
      !(cfg.beta > 0.0 && cfg.beta < 1.0) ||
      !(cfg.alpha0 > 0.0 && cfg.alpha0 <= 1.0)) {
    return absl::InvalidArgumentError(
        "need epsilon > 0, delta and beta in (0, 1), alpha0 in (0, 1]");
  }
  if (s.dim() != query_class.domain_dim()) {
    return absl::InvalidArgumentError("dataset dimension does not match class");
  }
  absl::StatusOr<DualClass> dual = DualView(query_class);
  if (!dual.ok()) return dual.status();
  absl::StatusOr<RoundBudget> budget =
      AdvancedBudget(cfg.epsilon, cfg.delta, cfg.rounds);
  if (!budget.ok()) return budget.status();

  OracleQueryResult result;
  result.budget = *budget;
  result.beta0 = cfg.beta / (4.0 * cfg.rounds);
  const double scale = cfg.ftpl_noise_scale.value_or(DefaultFtplNoiseScale(
      dual->separator_size(), query_class.log_universe_size(), cfg.rounds));
  if (!(scale > 0.0)) {
    return absl::InvalidArgumentError("FTPL noise scale must be positive");
  }
  const std::int64_t calls_before = dual_oracle.calls();

  ContextFtpl ftpl(dual->separator, scale, dual_oracle);
  result.played.push_back(query_class.FirstMember());
  ftpl.Observe(result.played.back());

  PbrConfig pbr{*budget, cfg.alpha0, result.beta0, std::nullopt};
  auto sampler = [&ftpl](Rng& r) { return ftpl.Draw(r); };
  const Rng round_streams = rng.Split(kRoundStreams);
  for (std::int64_t t = 1; t <= cfg.rounds; ++t) {
    Rng round_rng = round_streams.Split(t);
    absl::StatusOr<PbrOutcome> br = PrivateBestResponse(
        s, sampler, query_class.log_size(), pbr, minimizer, round_rng);
    if (!br.ok()) {
      if (br.status().code() != absl::StatusCode::kAborted) return br.status();
      result.failed_round = t;
      return result;
    }
    result.samples_per_round = br->samples;
    if (!br->query.has_value()) {
      result.failed_round = t;
      return result;
    }
    result.played.push_back(*br->query);
    ftpl.Observe(*br->query);
  }

  // Final release: tau_j uniform on [T], then x_j ~ S^{tau_j}, replaying the
  // data player's history in increasing tau.
  const std::int64_t count =
      SyntheticSampleCount(query_class.log_size(), cfg.alpha0, cfg.beta);
  Rng tau_rng = rng.Split(kTauStream);
  result.source_rounds.resize(count);
  for (std::int64_t& tau : result.source_rounds) {
    tau = 1 + static_cast<std::int64_t>(tau_rng.UniformInt(cfg.rounds));
  }
  std::vector<std::int64_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    return result.source_rounds[a] < result.source_rounds[b];
  });
  ContextFtpl replay(dual->separator, scale, dual_oracle);
  replay.Observe(result.played[0]);
  result.points.assign(count, DataPoint());
  const Rng draw_streams = rng.Split(kFinalDrawStreams);
  for (std::int64_t j : order) {
    while (replay.observed() < result.source_rounds[j]) {
      replay.Observe(result.played[replay.observed()]);
    }
    Rng draw_rng = draw_streams.Split(j);
    absl::StatusOr<DataPoint> x = replay.Draw(draw_rng);
    if (!x.ok()) {
      if (x.status().code() != absl::StatusCode::kAborted) return x.status();
      result.failed_round = cfg.rounds;
      result.points.clear();
      return result;
    }
    result.points[j] = *std::move(x);
  }
  result.dual_oracle_calls = dual_oracle.calls() - calls_before;
  return result;
}

}  // namespace oracle_dp
