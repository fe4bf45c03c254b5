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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "oracle_dp/audit/coupling_audit.h"
#include "oracle_dp/audit/dp_audit.h"
#include "oracle_dp/audit/error_table.h"
#include "oracle_dp/audit/regret.h"
#include "oracle_dp/cli/app.h"
#include "oracle_dp/core/parallel.h"
#include "oracle_dp/core/query_class.h"
#include "oracle_dp/core/separator.h"
#include "oracle_dp/mechanisms/rspm.h"
#include "oracle_dp/oracles/dual_oracle.h"
#include "oracle_dp/oracles/oracle.h"
#include "oracle_dp/prsma/prsma.h"
#include "oracle_dp/synthgen/game.h"
#include "oracle_dp/synthgen/oracle_query.h"

namespace oracle_dp {
namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Check = std::function<absl::StatusOr<Verdict>(int threads)>;

double Median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size();
  return k % 2 == 1 ? v[k / 2] : (v[k / 2 - 1] + v[k / 2]) / 2;
}

double Mean(const std::vector<double>& v) {
  double sum = 0;
  for (double x : v) sum += x;
  return v.empty() ? std::nan("") : sum / v.size();
}

// ---------------------------------------------------------------------------

absl::StatusOr<Verdict> Separators(int) {
  std::vector<std::string> bad;
  int checked = 0;
  auto verify = [&](absl::StatusOr<QueryClass> qc) -> absl::Status {
    if (!qc.ok()) return qc.status();
    absl::StatusOr<SeparatorSet> sep = BuildSeparatorSet(*qc);
    if (!sep.ok()) return sep.status();
    absl::StatusOr<bool> ok = VerifySeparator(*qc, sep->elements);
    if (!ok.ok()) return ok.status();
    ++checked;
    if (!*ok) bad.push_back(qc->Describe());
    return absl::OkStatus();
  };
  for (Family f : {Family::kConjunction, Family::kDisjunction, Family::kParity}) {
    for (int d = 2; d <= 6; ++d) {
      if (absl::Status st = verify(MakeBooleanClass(f, d)); !st.ok()) return st;
    }
  }
  for (int d = 2; d <= 4; ++d) {
    ClassSpec spec;
    spec.family = Family::kHalfspace;
    spec.dim = d;
    spec.weight_grid = {-1.0, 1.0};
    if (absl::Status st = verify(QueryClass::Create(spec)); !st.ok()) return st;
  }
  for (int d = 2; d <= 3; ++d) {
    if (absl::Status st = verify(MakeBooleanClass(Family::kDecisionList, d)); !st.ok()) {
      return st;
    }
  }
  return Verdict{bad.empty(),
                 absl::StrFormat("%d classes verified, %d rejected", checked, bad.size())};
}

// Excess errors of `trials` seeded runs on random product datasets.
absl::StatusOr<std::vector<double>> RspmExcess(int d, int n, int trials, bool gaussian,
                                               double delta, std::uint64_t stream,
                                               int threads) {
  absl::StatusOr<QueryClass> qc = MakeBooleanClass(Family::kConjunction, d);
  if (!qc.ok()) return qc.status();
  absl::StatusOr<SeparatorSet> sep = BuildSeparatorSet(*qc);
  if (!sep.ok()) return sep.status();
  std::vector<double> excess(trials);
  const Rng root = Rng(stream);
  absl::Status st = ParallelFor(trials, threads, [&](std::int64_t t) -> absl::Status {
    Rng data = root.Split(t).Split(0);
    Rng mech = root.Split(t).Split(1);
    Dataset s = RandomProductDataset(d, n, data);
    ExactOracle oracle(*qc);
    absl::StatusOr<MechanismOutput> out =
        gaussian ? RspmGaussian(RspmInput::FromDataset(s), *sep, 1.0, delta, oracle, mech)
                 : Rspm(RspmInput::FromDataset(s), *sep, 1.0, oracle, mech);
    if (!out.ok()) return out.status();
    absl::StatusOr<double> e = ExcessError(*out->query, s, *qc);
    if (!e.ok()) return e.status();
    excess[t] = *e;
    return absl::OkStatus();
  });
  if (!st.ok()) return st;
  return excess;
}

absl::StatusOr<Verdict> RspmAccuracy(int threads) {
  const int n = 500, m = 3, trials = 200;
  absl::StatusOr<std::vector<double>> e = RspmExcess(3, n, trials, false, 0, 2, threads);
  if (!e.ok()) return e.status();
  const double bound = RspmAccuracyBound(m, n, 1.0, 0.05);
  const double mean_bound = RspmExpectedErrorBound(m, n, 1.0);
  const auto within = std::count_if(e->begin(), e->end(), [&](double x) { return x <= bound; });
  const double frac = static_cast<double>(within) / trials;
  const double mean = Mean(*e);
  return Verdict{frac >= 0.95 && mean <= mean_bound,
                 absl::StrFormat("%.3f of trials within %.4f; mean %.4f <= %.4f", frac,
                                 bound, mean, mean_bound)};
}

absl::StatusOr<Verdict> GaussianRspm(int threads) {
  const int n = 500, m = 3, trials = 200;
  const double delta = 0.05;
  absl::StatusOr<std::vector<double>> e = RspmExcess(3, n, trials, true, delta, 3, threads);
  if (!e.ok()) return e.status();
  const double bound = GaussianRspmAccuracyBound(m, n, 1.0, delta, 0.05);
  const auto within = std::count_if(e->begin(), e->end(), [&](double x) { return x <= bound; });
  const double frac = static_cast<double>(within) / trials;
  absl::StatusOr<std::vector<double>> lap6 = RspmExcess(6, n, trials, false, 0, 4, threads);
  if (!lap6.ok()) return lap6.status();
  absl::StatusOr<std::vector<double>> gau6 = RspmExcess(6, n, trials, true, delta, 4, threads);
  if (!gau6.ok()) return gau6.status();
  const double ml = Median(*lap6), mg = Median(*gau6);
  // Ratio >= 1 is read as ml >= mg so that a zero Gaussian median counts.
  return Verdict{frac >= 0.95 && ml >= mg,
                 absl::StrFormat("%.3f of trials within %.4f; d=6 median Laplace %.4f vs "
                                 "Gaussian %.4f",
                                 frac, bound, ml, mg)};
}

absl::StatusOr<Verdict> PrivacyAudit(int threads) {
  absl::StatusOr<QueryClass> qc = MakeBooleanClass(Family::kConjunction, 2);
  if (!qc.ok()) return qc.status();
  absl::StatusOr<SeparatorSet> sep = BuildSeparatorSet(*qc);
  if (!sep.ok()) return sep.status();
  absl::StatusOr<std::span<const DataPoint>> universe = qc->Universe();
  if (!universe.ok()) return universe.status();
  // conj{0} and conj{0,1} tie on this dataset, so swapping a (0,0) record for
  // (1,0) moves the exact minimizer.
  absl::StatusOr<Dataset> s = Dataset::Create({DataPoint{0, 0}, DataPoint{0, 0},
                                               DataPoint{0, 0}, DataPoint{0, 0},
                                               DataPoint{0, 1}, DataPoint{0, 1},
                                               DataPoint{1, 1}, DataPoint{1, 1}});
  if (!s.ok()) return s.status();
  std::vector<Dataset> neighbors = SubstitutionNeighbors(*s, *universe);
  LabeledMechanism rspm = [&](const Dataset& d, Rng& rng) -> absl::StatusOr<std::string> {
    ExactOracle oracle(*qc);
    absl::StatusOr<MechanismOutput> out =
        Rspm(RspmInput::FromDataset(d), *sep, 1.0, oracle, rng);
    if (!out.ok()) return out.status();
    return out->query->Encode();
  };
  LabeledMechanism erm = [&](const Dataset& d, Rng&) -> absl::StatusOr<std::string> {
    absl::StatusOr<OracleAnswer> a =
        ExactOracle::Minimize(*qc, UniformlyWeighted(d.points(), 1.0));
    if (!a.ok()) return a.status();
    return a->query->Encode();
  };
  AuditConfig cfg;
  cfg.epsilon = 1.0;
  cfg.trials = 200000;
  cfg.threads = threads;
  absl::StatusOr<AuditReport> r = DpRatioAudit(rspm, "rspm", *s, neighbors, cfg, Rng(5));
  if (!r.ok()) return r.status();
  absl::StatusOr<AuditReport> c = DpRatioAudit(erm, "erm", *s, neighbors, cfg, Rng(6));
  if (!c.ok()) return c.status();
  return Verdict{r->passed() && !c->passed(),
                 absl::StrFormat("rspm: %d neighbors, %d events, %d violations, max log "
                                 "ratio %.3f; erm control: %d violations",
                                 neighbors.size(), r->events_checked, r->violations.size(),
                                 r->max_log_ratio, c->violations.size())};
}

absl::StatusOr<Verdict> PrsmaStructure(int threads) {
  std::vector<std::string> problems;
  // K and reps on a grid, recomputed here.
  for (double eps : {0.05, 0.1, 0.2, 0.5}) {
    for (double delta : {0.01, 0.1, 0.25, 0.5}) {
      absl::StatusOr<PrsmaParams> p =
          DerivePrsmaParams({eps * 62, delta * 11, false, 1'000'000}, 1'000'000);
      if (!p.ok()) return p.status();
      const int k = static_cast<int>(std::ceil((1 + std::log(2 / delta)) / eps));
      const auto reps = static_cast<std::int64_t>(std::ceil(std::log(k / delta) / delta));
      if (p->partitions != k || p->reps != reps) {
        problems.push_back(absl::StrFormat("grid eps=%g delta=%g", eps, delta));
      }
    }
  }

  absl::StatusOr<QueryClass> qc = MakeBooleanClass(Family::kConjunction, 2);
  if (!qc.ok()) return qc.status();
  absl::StatusOr<SeparatorSet> sep = BuildSeparatorSet(*qc);
  if (!sep.ok()) return sep.status();
  Rng data(11);
  Dataset s = RandomProductDataset(2, 400, data);
  const WeightedDataset records = UniformlyWeighted(s.points(), 1.0);
  const PrsmaConfig cfg{0.1, 0.1, /*raw=*/true, kDefaultRepsCap};

  // Always-fail oracle.
  const int kFailRuns = 5000;
  absl::StatusOr<FailurePolicy> always = FailurePolicy::Bernoulli(1.0);
  if (!always.ok()) return always.status();
  std::vector<char> released(kFailRuns, 0);
  absl::Status st = ParallelFor(kFailRuns, threads, [&](std::int64_t i) -> absl::Status {
    CertifiableOracle oracle(*qc, *always, Rng(i).Split(7));
    absl::StatusOr<PrsmaOutcome> out = PrsmaRspm(s, *sep, cfg, oracle, Rng(i));
    if (!out.ok()) return out.status();
    released[i] = !out->failed();
    return absl::OkStatus();
  });
  if (!st.ok()) return st;
  const double rate =
      std::count(released.begin(), released.end(), 1) / static_cast<double>(kFailRuns);
  const double slack = 3 * std::sqrt(cfg.delta_target * (1 - cfg.delta_target) / kFailRuns);
  if (rate > cfg.delta_target + slack) problems.push_back("always-fail release rate");

  // Never-fail oracle against the subsample baseline.
  const int kEqualityRuns = 300;
  std::vector<char> mismatch(kEqualityRuns, 0);
  st = ParallelFor(kEqualityRuns, threads, [&](std::int64_t i) -> absl::Status {
    CertifiableOracle oracle(*qc, FailurePolicy::Never(), Rng(0));
    const Rng rng(i);
    absl::StatusOr<PrsmaOutcome> out = PrsmaRspm(s, *sep, cfg, oracle, rng);
    if (!out.ok()) return out.status();
    if (out->failed()) return absl::OkStatus();
    ExactOracle exact(*qc);
    Rng inner = PrsmaInnerStream(rng, out->chosen_part, out->chosen_rep, out->params.reps);
    absl::StatusOr<MechanismOutput> base =
        Rspm(RspmInput{PartRecords(records, *out, out->chosen_part), {}}, *sep,
             out->params.eps_prime, exact, inner);
    if (!base.ok()) return base.status();
    mismatch[i] = *base->query != *out->result;
    return absl::OkStatus();
  });
  if (!st.ok()) return st;
  const auto mismatches = std::count(mismatch.begin(), mismatch.end(), 1);
  if (mismatches > 0) problems.push_back("never-fail baseline mismatch");

  // Bernoulli(0.05) failures against the exact-oracle twin.
  absl::StatusOr<FailurePolicy> bern = FailurePolicy::Bernoulli(0.05);
  if (!bern.ok()) return bern.status();
  OracleAlgorithm rspm = [&](const Dataset& d, Rng& rng,
                             WeightedOracle& oracle) -> absl::StatusOr<std::optional<Query>> {
    absl::StatusOr<MechanismOutput> out =
        Rspm(RspmInput::FromDataset(d), *sep, 1.0, oracle, rng);
    if (!out.ok()) return out.status();
    return out->query;
  };
  Rng small(12);
  Dataset tiny = RandomProductDataset(2, 8, small);
  absl::StatusOr<CouplingReport> coupling =
      CouplingAudit(rspm, tiny, *qc, *bern, 20000, 1, threads);
  if (!coupling.ok()) return coupling.status();
  if (coupling->tv > 0.05 + coupling->tv_slack) problems.push_back("coupling TV");

  return Verdict{problems.empty(),
                 absl::StrFormat("always-fail release rate %.4f <= %.4f; never-fail "
                                 "mismatches %d; TV %.4f <= %.4f%s",
                                 rate, cfg.delta_target + slack, mismatches, coupling->tv,
                                 0.05 + coupling->tv_slack,
                                 problems.empty() ? "" : "; failed: " + problems.front())};
}

absl::StatusOr<Verdict> PrsmaScaling(int threads) {
  absl::StatusOr<QueryClass> qc = MakeBooleanClass(Family::kConjunction, 3);
  if (!qc.ok()) return qc.status();
  absl::StatusOr<SeparatorSet> sep = BuildSeparatorSet(*qc);
  if (!sep.ok()) return sep.status();
  const int trials = 50;
  double medians[2];
  std::int64_t fails[2];
  int idx = 0;
  for (int n : {5000, 20000}) {
    std::vector<double> excess(trials, -1);
    absl::Status st = ParallelFor(trials, threads, [&](std::int64_t t) -> absl::Status {
      Rng data = Rng(1000 + t);
      Dataset s = RandomProductDataset(3, n, data);
      ExactOracle oracle(*qc);
      absl::StatusOr<PrsmaOutcome> out =
          PrsmaRspm(s, *sep, {31.0, 5.5, false, kDefaultRepsCap}, oracle, Rng(t));
      if (!out.ok()) return out.status();
      if (out->failed()) return absl::OkStatus();
      absl::StatusOr<double> e = ExcessError(*out->result, s, *qc);
      if (!e.ok()) return e.status();
      excess[t] = *e;
      return absl::OkStatus();
    });
    if (!st.ok()) return st;
    std::vector<double> kept;
    for (double e : excess) {
      if (e >= 0) kept.push_back(e);
    }
    fails[idx] = trials - static_cast<std::int64_t>(kept.size());
    medians[idx++] = Median(kept);
  }
  const double ratio = medians[0] / medians[1];
  return Verdict{ratio >= 1.5 && ratio <= 3.0,
                 absl::StrFormat("median excess %.4f (n=5000, %d Fail) / %.4f (n=20000, "
                                 "%d Fail) = %.3f in [1.5, 3]",
                                 medians[0], fails[0], medians[1], fails[1], ratio)};
}

absl::StatusOr<Verdict> OracleQueryEndToEnd(int threads) {
  absl::StatusOr<QueryClass> qc = MakeBooleanClass(Family::kConjunction, 3);
  if (!qc.ok()) return qc.status();
  absl::StatusOr<SeparatorSet> sep = BuildSeparatorSet(*qc);
  if (!sep.ok()) return sep.status();
  absl::StatusOr<DualClass> dual = DualView(*qc);
  if (!dual.ok()) return dual.status();

  // Game value at the true data.
  Rng gdata(99);
  Dataset g = RandomProductDataset(3, 5000, gdata);
  absl::StatusOr<double> self_error = MaxQueryError(g.points(), g.points(), *qc);
  absl::StatusOr<double> value = BestResponseValue(g.points(), g.points(), *qc);
  if (!self_error.ok()) return self_error.status();
  if (!value.ok()) return value.status();
  const bool game_value_zero = *self_error == 0.0 && *value == 0.0;

  const int runs = 20;
  const double eps = 2.0, delta = 1e-4, beta = 0.1;
  double medians[2];
  int idx = 0;
  for (int n : {5000, 20000}) {
    ProblemSizes z{sep->size(), dual->separator_size(), qc->log_universe_size(),
                   qc->log_size(), n, eps, delta, beta};
    OracleQueryConfig cfg{PresetRounds(Instantiation::kGaussianRspm, z), eps, delta, beta,
                          PresetAlpha(Instantiation::kGaussianRspm, z), std::nullopt};
    std::vector<double> errors(runs);
    absl::Status st = ParallelFor(runs, threads, [&](std::int64_t r) -> absl::Status {
      Rng data = Rng(1000 + r);
      Dataset s = RandomProductDataset(3, n, data);
      ExactOracle oracle(*qc);
      ExactDualOracle dual_oracle(*qc);
      absl::StatusOr<OracleQueryResult> res =
          OracleQuery(s, *qc, cfg, dual_oracle, GaussianRspmMinimizer(*sep, oracle), Rng(r));
      if (!res.ok()) return res.status();
      if (res->failed()) {
        errors[r] = 1.0;
        return absl::OkStatus();
      }
      absl::StatusOr<double> e = MaxQueryError(s.points(), res->points, *qc);
      if (!e.ok()) return e.status();
      errors[r] = *e;
      return absl::OkStatus();
    });
    if (!st.ok()) return st;
    medians[idx++] = Median(errors);
  }
  return Verdict{game_value_zero && medians[0] <= 0.25 && medians[1] < medians[0],
                 absl::StrFormat("median max query error %.4f (n=5000) <= 0.25, %.4f "
                                 "(n=20000); game value at S %s",
                                 medians[0], medians[1], game_value_zero ? "0" : "nonzero")};
}

absl::StatusOr<Verdict> FtplRegretCheck(int threads) {
  absl::StatusOr<QueryClass> qc = MakeBooleanClass(Family::kParity, 3);
  if (!qc.ok()) return qc.status();
  const int seeds = 20;
  double medians[2];
  int idx = 0;
  for (int T : {500, 2000}) {
    absl::StatusOr<std::vector<Query>> stream = AdversarialQueryStream(*qc, T);
    if (!stream.ok()) return stream.status();
    std::vector<double> avg(seeds);
    absl::Status st = ParallelFor(seeds, threads, [&](std::int64_t i) -> absl::Status {
      absl::StatusOr<RegretTrace> tr = FtplRegret(*qc, *stream, 0, 1, Rng(i));
      if (!tr.ok()) return tr.status();
      avg[i] = tr->AverageRegret();
      return absl::OkStatus();
    });
    if (!st.ok()) return st;
    medians[idx++] = Median(avg);
  }
  return Verdict{medians[1] < medians[0],
                 absl::StrFormat("median average regret %.4f (T=500) > %.4f (T=2000)",
                                 medians[0], medians[1])};
}

absl::StatusOr<Verdict> FollowPrivateLeaderCheck(int threads) {
  absl::StatusOr<QueryClass> qc = MakeBooleanClass(Family::kParity, 2, /*loss_lift=*/true);
  if (!qc.ok()) return qc.status();
  absl::StatusOr<SeparatorSet> sep = BuildSeparatorSet(*qc);
  if (!sep.ok()) return sep.status();
  const double eps = 0.1;
  const int T = 2000, seeds = 20;
  Rng norm_rng(5);
  absl::StatusOr<double> ez = ExpectedPerturbationNorm(*qc, *sep, eps, 20000, norm_rng);
  if (!ez.ok()) return ez.status();
  const std::vector<DataPoint> stream = AlternatingLabelStream(2, T);
  std::vector<double> avg(seeds);
  absl::Status st = ParallelFor(seeds, threads, [&](std::int64_t i) -> absl::Status {
    ExactOracle oracle(*qc);
    absl::StatusOr<RegretTrace> tr =
        FollowPrivateLeader(*qc, stream, RspmPerm(*qc, *sep, eps, oracle), Rng(i));
    if (!tr.ok()) return tr.status();
    avg[i] = tr->AverageRegret();
    return absl::OkStatus();
  });
  if (!st.ok()) return st;
  const double median = Median(avg);
  const double bound = eps + *ez / T + 0.05;
  return Verdict{median <= bound,
                 absl::StrFormat("median average regret %.4f <= %.4f (E|Z| = %.2f)", median,
                                 bound, *ez)};
}

absl::StatusOr<Verdict> Reproducibility(int) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "oracle_dp_acceptance_replay";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string data = (dir / "data.txt").string();
  const std::string tiny = (dir / "tiny.txt").string();
  {
    std::ofstream f(data);
    Rng rng(3);
    Dataset s = RandomProductDataset(3, 300, rng);
    for (const DataPoint& p : s.points()) {
      f << p[0] << "," << p[1] << "," << p[2] << "\n";
    }
    std::ofstream(tiny) << "0,1\n1,1\n1,0\n";
  }
  const std::string out_dir = (dir / "runs").string();
  std::vector<std::vector<std::string>> runs = {
      {"learn", "--data", data, "--mechanism", "rspm"},
      {"learn", "--data", data, "--mechanism", "prsma", "--eps", "31", "--delta", "5.5"},
      {"synth", "--data", data, "--T", "20", "--eps", "2"},
      {"audit", "--class", "conj", "--d", "2", "--data", tiny, "--trials", "10000"},
      {"bench", "--n-grid", "200,400", "--trials", "20"},
  };
  std::ostringstream sink;
  for (std::vector<std::string> args : runs) {
    args.insert(args.begin(), "oracle-dp");
    args.insert(args.end(), {"--out-dir", out_dir, "--threads", "1"});
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    if (RunCli(static_cast<int>(argv.size()), argv.data(), sink, sink) != 0) {
      return absl::InternalError(absl::StrCat("run failed: ", args[1], "\n", sink.str()));
    }
  }
  const std::string log = (fs::path(out_dir) / "runs.jsonl").string();
  int identical = 0, checks = 0;
  for (int line = 1; line <= static_cast<int>(runs.size()); ++line) {
    for (const char* threads : {"2", "4"}) {
      std::ostringstream out;
      const std::string line_text = absl::StrCat(line);
      std::vector<const char*> argv = {"oracle-dp", "replay",     "--record", log.c_str(),
                                       "--line",    line_text.c_str(), "--threads", threads};
      const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, out);
      ++checks;
      identical += code == 0 && out.str().find("identical") != std::string::npos;
    }
  }
  fs::remove_all(dir);
  return Verdict{identical == checks && checks == 10,
                 absl::StrFormat("%d/%d replays identical across thread counts", identical,
                                 checks)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0 means no runtime limit
  Check check;
};

}  // namespace
}  // namespace oracle_dp

int main(int argc, char** argv) {
  using namespace oracle_dp;
  CLI::App app{"oracle-dp acceptance suite"};
  std::vector<int> only;
  int threads = DefaultThreads();
  app.add_option("--only", only, "criterion ids to run (default: all)")->delimiter(',');
  app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 1024));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "separator correctness", 30, Separators},
      {2, "RSPM accuracy", 120, RspmAccuracy},
      {3, "Gaussian RSPM", 180, GaussianRspm},
      {4, "RSPM privacy audit", 600, PrivacyAudit},
      {5, "PRSMA structure", 600, PrsmaStructure},
      {6, "PRSMA accuracy scaling", 900, PrsmaScaling},
      {7, "OracleQuery end-to-end", 1200, OracleQueryEndToEnd},
      {8, "CONTEXT-FTPL regret", 0, FtplRegretCheck},
      {9, "follow the private leader", 0, FollowPrivateLeaderCheck},
      {10, "reproducibility", 0, Reproducibility},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    absl::StatusOr<Verdict> v = c.check(threads);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_s == 0 || secs < c.budget_s;
    const bool pass = v.ok() && v->pass && in_time;
    failed += !pass;
    std::string detail = v.ok() ? v->detail : "error: " + std::string(v.status().message());
    if (!in_time) absl::StrAppend(&detail, "; over the ", c.budget_s, " s budget");
    std::printf("criterion %2d %s  %-26s %s (%.1f s)\n", c.id, pass ? "PASS" : "FAIL", c.name,
                detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%s\n", failed == 0 ? "all criteria passed"
                                  : absl::StrCat(failed, " criteria failed").c_str());
  return failed == 0 ? 0 : 1;
}
