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

#include "oracle_dp/cli/commands.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "oracle_dp/audit/dp_audit.h"
#include "oracle_dp/audit/error_table.h"
#include "oracle_dp/audit/regret.h"
#include "oracle_dp/core/dataset_io.h"
#include "oracle_dp/core/parallel.h"
#include "oracle_dp/core/query_class.h"
#include "oracle_dp/core/separator.h"
#include "oracle_dp/mechanisms/rspm.h"
#include "oracle_dp/oracles/dual_oracle.h"
#include "oracle_dp/oracles/oracle.h"
#include "oracle_dp/prsma/prsma.h"
#include "oracle_dp/synthgen/game.h"
#include "oracle_dp/synthgen/oracle_query.h"

#ifndef ORACLE_DP_VERSION
#define ORACLE_DP_VERSION "dev"
#endif

namespace oracle_dp {
namespace {

using json = nlohmann::json;

constexpr const char* kCommands[] = {"learn",  "synth", "audit",
                                     "regret", "bench", "verify-separators"};

constexpr std::uint64_t kMechanismStream = 1;
constexpr std::uint64_t kOracleStream = 2;

#define ASSIGN_OR_RETURN_IMPL(var, expr, tmp) \
  auto tmp = (expr);                          \
  if (!tmp.ok()) return tmp.status();         \
  var = *std::move(tmp)
#define CONCAT_INNER(a, b) a##b
#define CONCAT(a, b) CONCAT_INNER(a, b)
#define ASSIGN_OR_RETURN(var, expr) \
  ASSIGN_OR_RETURN_IMPL(var, expr, CONCAT(status_or_, __LINE__))

// 64-bit FNV-1a, printed as hex; a stable digest of written outputs.
std::string Digest(absl::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return absl::StrFormat("%016x", h);
}

json Number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

double Median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : (v[mid - 1] + v[mid]) / 2;
}

absl::StatusOr<QueryClass> LoadClass(const ExperimentConfig& cfg) {
  ASSIGN_OR_RETURN(std::string name, cfg.GetString("class"));
  ASSIGN_OR_RETURN(Family family, ParseFamily(name));
  ASSIGN_OR_RETURN(std::int64_t d, cfg.GetInt("d"));
  if (d < 1 || d > 30) return absl::InvalidArgumentError("d must lie in [1, 30]");
  ASSIGN_OR_RETURN(bool lift, cfg.GetBool("loss_lift"));
  if (family != Family::kHalfspace) {
    return MakeBooleanClass(family, static_cast<int>(d), lift);
  }
  ClassSpec spec;
  spec.family = family;
  spec.dim = static_cast<int>(d);
  spec.loss_lift = lift;
  ASSIGN_OR_RETURN(spec.weight_grid, cfg.GetDoubleList("weights"));
  return QueryClass::Create(std::move(spec));
}

absl::StatusOr<Dataset> LoadData(const ExperimentConfig& cfg,
                                 const QueryClass& query_class) {
  ASSIGN_OR_RETURN(std::string path, cfg.GetString("data"));
  if (path.empty()) return absl::InvalidArgumentError("data=<file> is required");
  ASSIGN_OR_RETURN(Dataset s, ReadDatasetFile(path));
  if (absl::Status st = CheckDatasetInUniverse(s, query_class); !st.ok()) {
    return st;
  }
  return s;
}

absl::StatusOr<int> Threads(const ExperimentConfig& cfg) {
  ASSIGN_OR_RETURN(std::int64_t t, cfg.GetInt("threads"));
  if (t < 1 || t > 1024) return absl::InvalidArgumentError("threads must lie in [1, 1024]");
  return static_cast<int>(t);
}

absl::StatusOr<Rng> RootRng(const ExperimentConfig& cfg) {
  ASSIGN_OR_RETURN(std::int64_t seed, cfg.GetInt("seed"));
  return Rng(static_cast<std::uint64_t>(seed));
}

absl::StatusOr<CommandOutput> Learn(const ExperimentConfig& cfg) {
  ASSIGN_OR_RETURN(QueryClass qc, LoadClass(cfg));
  ASSIGN_OR_RETURN(Dataset s, LoadData(cfg, qc));
  ASSIGN_OR_RETURN(std::string mech_name, cfg.GetString("mechanism"));
  ASSIGN_OR_RETURN(LearnPreset preset, ParseLearnPreset(mech_name));
  ASSIGN_OR_RETURN(double eps, cfg.GetDouble("eps"));
  ASSIGN_OR_RETURN(double delta, cfg.GetDouble("delta"));
  ASSIGN_OR_RETURN(std::int64_t reps_cap, cfg.GetInt("reps_cap"));
  ASSIGN_OR_RETURN(std::string policy_text, cfg.GetString("policy"));
  ASSIGN_OR_RETURN(FailurePolicy policy,
                   FailurePolicy::Parse(policy_text, qc.domain_dim()));
  ASSIGN_OR_RETURN(SeparatorSet sep, BuildSeparatorSet(qc));
  ASSIGN_OR_RETURN(Rng root, RootRng(cfg));
  CertifiableOracle oracle(qc, policy, root.Split(kOracleStream));
  Rng rng = root.Split(kMechanismStream);

  CommandOutput out;
  out.payload["mechanism"] = mech_name;
  std::optional<Query> q;
  switch (preset) {
    case LearnPreset::kRspm: {
      ASSIGN_OR_RETURN(MechanismOutput m,
                       Rspm(RspmInput::FromDataset(s), sep, eps, oracle, rng));
      q = m.query;
      break;
    }
    case LearnPreset::kRspmGaussian: {
      ASSIGN_OR_RETURN(MechanismOutput m, RspmGaussian(RspmInput::FromDataset(s),
                                                       sep, eps, delta, oracle, rng));
      q = m.query;
      break;
    }
    case LearnPreset::kPrsma: {
      ASSIGN_OR_RETURN(PrsmaOutcome m,
                       PrsmaRspm(s, sep, {eps, delta, false, reps_cap}, oracle, rng));
      q = m.result;
      out.payload["partitions"] = m.params.partitions;
      out.payload["reps"] = m.params.reps;
      out.payload["pass_count"] = m.pass_count;
      out.payload["noisy_count"] = m.noisy_count;
      break;
    }
  }
  out.oracle_calls = oracle.calls();
  if (!q.has_value()) {
    out.mechanism_failed = true;
    out.payload["query"] = nullptr;
    out.summary = "FAIL\n";
    return out;
  }
  ASSIGN_OR_RETURN(double excess, ExcessError(*q, s, qc));
  out.payload["query"] = q->Encode();
  out.payload["excess_error"] = excess;
  out.summary = absl::StrCat(q->Encode(), "\n");
  return out;
}

absl::StatusOr<CommandOutput> Synth(const ExperimentConfig& cfg) {
  ASSIGN_OR_RETURN(QueryClass qc, LoadClass(cfg));
  ASSIGN_OR_RETURN(Dataset s, LoadData(cfg, qc));
  ASSIGN_OR_RETURN(std::string preset_name, cfg.GetString("preset"));
  ASSIGN_OR_RETURN(Instantiation inst, ParseInstantiation(preset_name));
  ASSIGN_OR_RETURN(double eps, cfg.GetDouble("eps"));
  ASSIGN_OR_RETURN(double delta, cfg.GetDouble("delta"));
  ASSIGN_OR_RETURN(double beta, cfg.GetDouble("beta"));
  ASSIGN_OR_RETURN(std::int64_t rounds, cfg.GetInt("T"));
  ASSIGN_OR_RETURN(double alpha0, cfg.GetDouble("alpha0"));
  ASSIGN_OR_RETURN(double ftpl_scale, cfg.GetDouble("ftpl_scale"));
  ASSIGN_OR_RETURN(std::int64_t reps_cap, cfg.GetInt("reps_cap"));
  ASSIGN_OR_RETURN(std::string policy_text, cfg.GetString("policy"));
  ASSIGN_OR_RETURN(FailurePolicy policy,
                   FailurePolicy::Parse(policy_text, qc.domain_dim()));
  ASSIGN_OR_RETURN(std::string out_dir, cfg.GetString("out_dir"));
  ASSIGN_OR_RETURN(std::int64_t seed, cfg.GetInt("seed"));
  if (rounds < 0 || alpha0 < 0 || alpha0 > 1 || ftpl_scale < 0) {
    return absl::InvalidArgumentError(
        "need T >= 0, alpha0 in [0, 1] and ftpl_scale >= 0 (0 selects presets)");
  }
  if (!(eps > 0) || !(delta > 0 && delta < 1) || !(beta > 0 && beta < 1)) {
    return absl::InvalidArgumentError("need eps > 0 and delta, beta in (0, 1)");
  }
  ASSIGN_OR_RETURN(SeparatorSet sep, BuildSeparatorSet(qc));
  ASSIGN_OR_RETURN(DualClass dual, DualView(qc));
  ProblemSizes sizes{sep.size(), dual.separator_size(), qc.log_universe_size(),
                     qc.log_size(),  s.size(),  eps, delta, beta};
  if (rounds == 0) rounds = PresetRounds(inst, sizes);
  if (alpha0 == 0) alpha0 = PresetAlpha(inst, sizes);

  ASSIGN_OR_RETURN(Rng root, RootRng(cfg));
  CertifiableOracle oracle(qc, policy, root.Split(kOracleStream));
  ExactDualOracle dual_oracle(qc);
  PrivateMinimizer minimizer;
  switch (inst) {
    case Instantiation::kPrivateOracle:
      minimizer = RspmMinimizer(sep, oracle);
      break;
    case Instantiation::kGaussianRspm:
      minimizer = GaussianRspmMinimizer(sep, oracle);
      break;
    case Instantiation::kPrsma:
      minimizer = PrsmaMinimizer(sep, oracle, reps_cap);
      break;
  }
  OracleQueryConfig oq{rounds, eps, delta, beta, alpha0, std::nullopt};
  if (ftpl_scale > 0) oq.ftpl_noise_scale = ftpl_scale;
  ASSIGN_OR_RETURN(OracleQueryResult res,
                   OracleQuery(s, qc, oq, dual_oracle, minimizer,
                               root.Split(kMechanismStream)));

  CommandOutput out;
  out.oracle_calls = oracle.calls() + res.dual_oracle_calls;
  out.payload["preset"] = preset_name;
  out.payload["T"] = rounds;
  out.payload["alpha0"] = alpha0;
  out.payload["epsilon0"] = res.budget.epsilon0;
  out.payload["delta0"] = res.budget.delta0;
  out.payload["samples_per_round"] = res.samples_per_round;
  if (res.failed()) {
    out.mechanism_failed = true;
    out.payload["failed_round"] = *res.failed_round;
    out.summary = absl::StrCat("FAIL in round ", *res.failed_round, "\n");
    return out;
  }
  ASSIGN_OR_RETURN(Dataset synthetic, Dataset::Create(res.points));
  ASSIGN_OR_RETURN(double error, MaxQueryError(s.points(), synthetic.points(), qc));
  const std::string file = absl::StrCat("synth_", seed, ".txt");
  const std::string text = FormatDataset(synthetic);
  const std::string path = (std::filesystem::path(out_dir) / file).string();
  out.files.emplace_back(file, text);
  out.payload["synthetic_path"] = path;
  out.payload["points"] = synthetic.size();
  out.payload["max_query_error"] = error;
  out.payload["digest"] = Digest(text);
  out.summary = absl::StrFormat(
      "wrote %d points to %s (T=%d, alpha0=%.4g, max query error %.4f)\n",
      synthetic.size(), path, rounds, alpha0, error);
  return out;
}

absl::StatusOr<LabeledMechanism> AuditMechanism(absl::string_view name,
                                                const QueryClass& qc,
                                                const SeparatorSet& sep,
                                                double eps, double delta,
                                                std::int64_t reps_cap,
                                                std::atomic<std::int64_t>& calls) {
  auto label = [](const std::optional<Query>& q) {
    return q.has_value() ? q->Encode() : std::string(kFailLabel);
  };
  if (name == "constant") {
    return LabeledMechanism([&qc](const Dataset&, Rng&) -> absl::StatusOr<std::string> {
      return qc.FirstMember().Encode();
    });
  }
  if (name == "erm") {
    return LabeledMechanism([&qc, &calls](const Dataset& s,
                                          Rng&) -> absl::StatusOr<std::string> {
      ++calls;
      absl::StatusOr<OracleAnswer> a =
          ExactOracle::Minimize(qc, UniformlyWeighted(s.points(), 1.0));
      if (!a.ok()) return a.status();
      return a->query->Encode();
    });
  }
  ASSIGN_OR_RETURN(LearnPreset preset, ParseLearnPreset(name));
  return LabeledMechanism([=, &qc, &sep, &calls](
                              const Dataset& s,
                              Rng& rng) -> absl::StatusOr<std::string> {
    ExactOracle oracle(qc);
    std::optional<Query> q;
    if (preset == LearnPreset::kPrsma) {
      absl::StatusOr<PrsmaOutcome> m =
          PrsmaRspm(s, sep, {eps, delta, false, reps_cap}, oracle, rng);
      if (!m.ok()) return m.status();
      q = m->result;
    } else {
      absl::StatusOr<MechanismOutput> m =
          preset == LearnPreset::kRspm
              ? Rspm(RspmInput::FromDataset(s), sep, eps, oracle, rng)
              : RspmGaussian(RspmInput::FromDataset(s), sep, eps, delta, oracle, rng);
      if (!m.ok()) return m.status();
      q = m->query;
    }
    calls += oracle.calls();
    return label(q);
  });
}

absl::StatusOr<CommandOutput> Audit(const ExperimentConfig& cfg) {
  ASSIGN_OR_RETURN(QueryClass qc, LoadClass(cfg));
  ASSIGN_OR_RETURN(Dataset s, LoadData(cfg, qc));
  ASSIGN_OR_RETURN(std::string mech_name, cfg.GetString("mechanism"));
  ASSIGN_OR_RETURN(double eps, cfg.GetDouble("eps"));
  ASSIGN_OR_RETURN(double delta, cfg.GetDouble("delta"));
  ASSIGN_OR_RETURN(std::int64_t trials, cfg.GetInt("trials"));
  ASSIGN_OR_RETURN(std::int64_t reps_cap, cfg.GetInt("reps_cap"));
  ASSIGN_OR_RETURN(int threads, Threads(cfg));
  ASSIGN_OR_RETURN(std::int64_t seed, cfg.GetInt("seed"));
  ASSIGN_OR_RETURN(SeparatorSet sep, BuildSeparatorSet(qc));
  ASSIGN_OR_RETURN(std::span<const DataPoint> universe, qc.Universe());
  std::atomic<std::int64_t> calls{0};
  ASSIGN_OR_RETURN(LabeledMechanism mech,
                   AuditMechanism(mech_name, qc, sep, eps, delta, reps_cap, calls));
  std::vector<Dataset> neighbors = SubstitutionNeighbors(s, universe);
  AuditConfig ac;
  ac.epsilon = eps;
  // The Laplace and exact mechanisms are audited as pure DP.
  ac.delta = (mech_name == "rspm_gaussian" || mech_name == "prsma") ? delta : 0.0;
  ac.trials = trials;
  ac.threads = threads;
  ASSIGN_OR_RETURN(Rng root, RootRng(cfg));
  ASSIGN_OR_RETURN(AuditReport report,
                   DpRatioAudit(mech, mech_name, s, neighbors, ac,
                                root.Split(kMechanismStream)));

  std::string lines;
  auto add_line = [&lines](const json& j) { absl::StrAppend(&lines, j.dump(), "\n"); };
  add_line({{"dataset", 0}, {"counts", report.base}});
  for (std::size_t k = 0; k < report.neighbors.size(); ++k) {
    add_line({{"dataset", k + 1},
              {"records", FormatDataset(neighbors[k])},
              {"counts", report.neighbors[k]}});
  }
  for (const EventViolation& v : report.violations) {
    add_line({{"violation", v.event},
              {"neighbor", v.neighbor + 1},
              {"base_on_left", v.base_on_left},
              {"p_left", v.p_left},
              {"p_right", v.p_right},
              {"p_left_lower", v.p_left_lower},
              {"p_right_upper", v.p_right_upper}});
  }
  json summary = {{"mechanism", mech_name},
                  {"trials", trials},
                  {"neighbors", neighbors.size()},
                  {"epsilon", eps},
                  {"delta", ac.delta},
                  {"events_checked", report.events_checked},
                  {"violations", report.violations.size()},
                  {"max_log_ratio", Number(report.max_log_ratio)},
                  {"passed", report.passed()}};
  add_line(summary);

  CommandOutput out;
  out.oracle_calls = calls.load();
  const std::string file = absl::StrCat("audit_", seed, ".jsonl");
  out.payload = summary;
  out.payload["report_path"] =
      (std::filesystem::path(*cfg.GetString("out_dir")) / file).string();
  out.payload["digest"] = Digest(lines);
  out.files.emplace_back(file, lines);
  out.summary = absl::StrFormat(
      "%-14s %8s %9s %8s %10s %13s  %s\n%-14s %8d %9d %8d %10d %13s  %s\n",
      "mechanism", "trials", "neighbors", "epsilon", "violations",
      "max_log_ratio", "result", mech_name, trials, neighbors.size(), eps,
      report.violations.size(),
      std::isinf(report.max_log_ratio)
          ? std::string("inf")
          : absl::StrFormat("%.4f", report.max_log_ratio),
      report.passed() ? "pass" : "FAIL");
  return out;
}

absl::StatusOr<CommandOutput> Regret(const ExperimentConfig& cfg) {
  ASSIGN_OR_RETURN(std::string kind, cfg.GetString("kind"));
  if (kind != "ftpl" && kind != "fpl") {
    return absl::InvalidArgumentError("kind must be ftpl or fpl");
  }
  ASSIGN_OR_RETURN(std::string family_name, cfg.GetString("class"));
  ASSIGN_OR_RETURN(Family family, ParseFamily(family_name));
  ASSIGN_OR_RETURN(std::int64_t d, cfg.GetInt("d"));
  if (d < 1 || d > 16) return absl::InvalidArgumentError("d must lie in [1, 16]");
  ASSIGN_OR_RETURN(std::vector<std::int64_t> horizons, cfg.GetIntList("T_grid"));
  ASSIGN_OR_RETURN(std::int64_t runs, cfg.GetInt("runs"));
  ASSIGN_OR_RETURN(double eps, cfg.GetDouble("eps"));
  ASSIGN_OR_RETURN(double ftpl_scale, cfg.GetDouble("ftpl_scale"));
  ASSIGN_OR_RETURN(int threads, Threads(cfg));
  ASSIGN_OR_RETURN(Rng root, RootRng(cfg));
  if (runs < 1) return absl::InvalidArgumentError("runs must be >= 1");
  for (std::int64_t t : horizons) {
    if (t < 1) return absl::InvalidArgumentError("T_grid entries must be >= 1");
  }
  const bool fpl = kind == "fpl";
  ASSIGN_OR_RETURN(QueryClass qc,
                   MakeBooleanClass(family, static_cast<int>(d), /*loss_lift=*/fpl));
  std::optional<SeparatorSet> sep;
  double expected_norm = 0.0;
  if (fpl) {
    if (!(eps > 0)) return absl::InvalidArgumentError("eps must be positive");
    ASSIGN_OR_RETURN(sep, BuildSeparatorSet(qc));
    Rng z_rng = root.Split(kOracleStream);
    ASSIGN_OR_RETURN(expected_norm,
                     ExpectedPerturbationNorm(qc, *sep, eps, 20000, z_rng));
  }

  CommandOutput out;
  std::atomic<std::int64_t> calls{0};
  json rows = json::array();
  std::vector<double> medians;
  const Rng base = root.Split(kMechanismStream);
  for (std::int64_t horizon : horizons) {
    std::vector<double> avg(runs);
    std::vector<Query> queries;
    std::vector<DataPoint> points;
    if (fpl) {
      points = AlternatingLabelStream(static_cast<int>(d), horizon);
    } else {
      ASSIGN_OR_RETURN(queries, AdversarialQueryStream(qc, horizon));
    }
    absl::Status st = ParallelFor(runs, threads, [&](std::int64_t r) -> absl::Status {
      Rng rng = base.Split(horizon).Split(r);
      absl::StatusOr<RegretTrace> trace;
      if (fpl) {
        ExactOracle oracle(qc);
        trace = FollowPrivateLeader(qc, points, RspmPerm(qc, *sep, eps, oracle), rng);
        calls += oracle.calls();
      } else {
        trace = FtplRegret(qc, queries, ftpl_scale, 1, rng);
        calls += horizon;
      }
      if (!trace.ok()) return trace.status();
      avg[r] = trace->AverageRegret();
      return absl::OkStatus();
    });
    if (!st.ok()) return st;
    const double median = Median(avg);
    medians.push_back(median);
    json row = {{"T", horizon}, {"median_average_regret", median}};
    if (fpl) row["bound"] = eps + expected_norm / horizon;
    rows.push_back(row);
    absl::StrAppend(&out.summary,
                    absl::StrFormat("T=%-7d median average regret %.5f%s\n",
                                    horizon, median,
                                    fpl ? absl::StrFormat("  (eps + E|Z|/T = %.5f)",
                                                          eps + expected_norm / horizon)
                                        : ""));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < medians.size(); ++i) {
    if (horizons[i] > horizons[i - 1] && medians[i] > medians[i - 1]) monotone = false;
  }
  out.oracle_calls = calls.load();
  out.payload = {{"kind", kind}, {"rows", rows}, {"non_increasing", monotone}};
  if (fpl) out.payload["expected_perturbation_norm"] = expected_norm;
  absl::StrAppend(&out.summary, "non-increasing in T: ", monotone ? "yes" : "no", "\n");
  return out;
}

absl::StatusOr<CommandOutput> Bench(const ExperimentConfig& cfg) {
  ASSIGN_OR_RETURN(QueryClass qc, LoadClass(cfg));
  ASSIGN_OR_RETURN(std::string mech_name, cfg.GetString("mechanism"));
  ASSIGN_OR_RETURN(LearnPreset preset, ParseLearnPreset(mech_name));
  ErrorTableConfig ec;
  ASSIGN_OR_RETURN(std::vector<std::int64_t> n_grid, cfg.GetIntList("n_grid"));
  ec.n_grid.clear();
  for (std::int64_t n : n_grid) {
    if (n < 1 || n > std::numeric_limits<int>::max()) {
      return absl::InvalidArgumentError("n_grid entries must be positive");
    }
    ec.n_grid.push_back(static_cast<int>(n));
  }
  ASSIGN_OR_RETURN(ec.epsilon_grid, cfg.GetDoubleList("eps_grid"));
  ASSIGN_OR_RETURN(ec.trials, cfg.GetInt("trials"));
  ASSIGN_OR_RETURN(ec.beta, cfg.GetDouble("beta"));
  ASSIGN_OR_RETURN(ec.delta, cfg.GetDouble("delta"));
  ASSIGN_OR_RETURN(ec.threads, Threads(cfg));
  ASSIGN_OR_RETURN(std::int64_t seed, cfg.GetInt("seed"));
  ASSIGN_OR_RETURN(Rng root, RootRng(cfg));
  ASSIGN_OR_RETURN(std::vector<ErrorRow> rows,
                   ErrorTable(preset, qc, ec, root.Split(kMechanismStream)));

  CommandOutput out;
  std::string tsv = "n\tepsilon\tmean_excess\tp95_excess\tbound\tfailures\n";
  json jrows = json::array();
  absl::StrAppend(&out.summary,
                  absl::StrFormat("%8s %8s %12s %12s %12s %8s\n", "n", "eps",
                                  "mean", "p95", "bound", "fails"));
  for (const ErrorRow& r : rows) {
    absl::StrAppend(&tsv, absl::StrFormat("%d\t%.17g\t%.17g\t%.17g\t%.17g\t%d\n", r.n,
                                          r.epsilon, r.mean_excess, r.p95_excess,
                                          r.bound, r.failures));
    absl::StrAppend(&out.summary,
                    absl::StrFormat("%8d %8.4g %12.6f %12.6f %12.6f %8d\n", r.n,
                                    r.epsilon, r.mean_excess, r.p95_excess,
                                    r.bound, r.failures));
    jrows.push_back({{"n", r.n},
                     {"epsilon", r.epsilon},
                     {"mean_excess", r.mean_excess},
                     {"p95_excess", r.p95_excess},
                     {"bound", r.bound},
                     {"failures", r.failures}});
    // One call per RSPM trial; PRSMA runs K * reps inner RSPM calls.
    std::int64_t per_trial = 1;
    if (preset == LearnPreset::kPrsma) {
      ASSIGN_OR_RETURN(PrsmaParams p,
                       DerivePrsmaParams({r.epsilon, ec.delta, false, kDefaultRepsCap}, r.n));
      per_trial = p.partitions * p.reps;
    }
    out.oracle_calls += ec.trials * per_trial;
  }
  const std::string file = absl::StrCat("bench_", seed, ".tsv");
  out.files.emplace_back(file, tsv);
  out.payload = {{"mechanism", mech_name}, {"rows", jrows}, {"digest", Digest(tsv)}};
  return out;
}

absl::StatusOr<CommandOutput> VerifySeparators(const ExperimentConfig& cfg) {
  ASSIGN_OR_RETURN(QueryClass qc, LoadClass(cfg));
  ASSIGN_OR_RETURN(SeparatorSet sep, BuildSeparatorSet(qc));
  ASSIGN_OR_RETURN(bool primal_ok, VerifySeparator(qc, sep.elements));
  CommandOutput out;
  out.payload = {{"class", qc.Describe()}, {"m1", sep.size()}, {"primal_ok", primal_ok}};
  std::string dual_text;
  // Some grids have no dual separator; that is reported, not treated as a
  // defect of the primal one.
  absl::StatusOr<DualClass> dual = DualView(qc);
  bool dual_ok = true;
  if (dual.ok()) {
    ASSIGN_OR_RETURN(dual_ok, VerifyDualSeparator(qc, dual->separator));
    out.payload["m2"] = dual->separator_size();
    out.payload["self_dual"] = dual->self_dual;
    out.payload["dual_ok"] = dual_ok;
    dual_text = absl::StrFormat("m2=%d %s", dual->separator_size(),
                                dual_ok ? "ok" : "BROKEN");
  } else {
    out.payload["dual_ok"] = nullptr;
    out.payload["dual_error"] = std::string(dual.status().message());
    dual_text = absl::StrCat("no dual separator (", dual.status().message(), ")");
  }
  out.check_failed = !primal_ok || !dual_ok;
  out.summary = absl::StrFormat("%s: m1=%d %s, %s\n", qc.Describe(), sep.size(),
                                primal_ok ? "ok" : "BROKEN", dual_text);
  return out;
}

bool IsInputError(absl::StatusCode code) {
  return code == absl::StatusCode::kInvalidArgument ||
         code == absl::StatusCode::kNotFound ||
         code == absl::StatusCode::kOutOfRange;
}

}  // namespace

std::span<const char* const> CommandNames() { return kCommands; }

std::string VersionString() { return ORACLE_DP_VERSION; }

absl::StatusOr<CommandOutput> RunCommand(absl::string_view command,
                                         const ExperimentConfig& cfg) {
  if (command == "learn") return Learn(cfg);
  if (command == "synth") return Synth(cfg);
  if (command == "audit") return Audit(cfg);
  if (command == "regret") return Regret(cfg);
  if (command == "bench") return Bench(cfg);
  if (command == "verify-separators") return VerifySeparators(cfg);
  return absl::InvalidArgumentError(absl::StrCat("unknown command '", command, "'"));
}

int ExitCode(const absl::StatusOr<CommandOutput>& result) {
  if (result.ok()) {
    if (result->mechanism_failed) return 4;
    return result->check_failed ? 1 : 0;
  }
  const absl::StatusCode code = result.status().code();
  if (IsInputError(code)) return 2;
  if (code == absl::StatusCode::kResourceExhausted) return 3;
  if (code == absl::StatusCode::kAborted) return 4;
  return 1;
}

std::string RunStatus(const absl::StatusOr<CommandOutput>& result) {
  switch (ExitCode(result)) {
    case 0:
      return "ok";
    case 2:
      return "input-error";
    case 3:
      return "capacity-error";
    case 4:
      return "fail";
  }
  return result.ok() ? "check-failed" : "error";
}

nlohmann::json MakeRunRecord(absl::string_view command,
                             const ExperimentConfig& cfg,
                             const absl::StatusOr<CommandOutput>& result,
                             double wall_time_s) {
  json record;
  record["command"] = std::string(command);
  record["params"] = cfg.values();
  record["seed"] = cfg.GetInt("seed").value_or(0);
  record["version"] = VersionString();
  record["wall_time_s"] = wall_time_s;
  record["status"] = RunStatus(result);
  if (result.ok()) {
    record["oracle_calls"] = result->oracle_calls;
    record["output"] = result->payload;
  } else {
    record["oracle_calls"] = 0;
    record["output"] = nullptr;
    record["error"] = std::string(result.status().message());
  }
  return record;
}

absl::StatusOr<bool> ReplayRecord(const nlohmann::json& record,
                                  std::optional<std::int64_t> threads) {
  if (!record.is_object() || !record.contains("command") ||
      !record.contains("params") || !record.contains("status")) {
    return absl::InvalidArgumentError("not a run record");
  }
  ExperimentConfig cfg = ExperimentConfig::Defaults();
  std::map<std::string, std::string> params;
  try {
    params = record.at("params").get<std::map<std::string, std::string>>();
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("bad params: ", e.what()));
  }
  if (threads.has_value()) params["threads"] = absl::StrCat(*threads);
  if (absl::Status st = cfg.Merge(params); !st.ok()) return st;
  const std::string command = record.at("command").get<std::string>();
  absl::StatusOr<CommandOutput> result = RunCommand(command, cfg);
  if (RunStatus(result) != record.at("status").get<std::string>()) return false;
  if (!result.ok()) return true;
  return result->payload == record.at("output");
}

int ExecuteAndRecord(absl::string_view command, const ExperimentConfig& cfg,
                     std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  absl::StatusOr<CommandOutput> result = RunCommand(command, cfg);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string out_dir = cfg.GetString("out_dir").value_or("runs");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    err << "cannot create " << out_dir << ": " << ec.message() << "\n";
    return 2;
  }
  if (result.ok()) {
    for (const auto& [name, content] : result->files) {
      std::ofstream f(std::filesystem::path(out_dir) / name);
      f << content;
      if (!f) {
        err << "cannot write " << name << " in " << out_dir << "\n";
        return 1;
      }
    }
    out << result->summary;
  } else {
    err << command << ": " << result.status().message() << "\n";
  }
  std::ofstream log(std::filesystem::path(out_dir) / "runs.jsonl", std::ios::app);
  log << MakeRunRecord(command, cfg, result, wall).dump() << "\n";
  if (!log) err << "cannot append to " << out_dir << "/runs.jsonl\n";
  return ExitCode(result);
}

}  // namespace oracle_dp
