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

#include "oracle_dp/oracles/oracle.h"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace oracle_dp {
namespace {

absl::Status CheckDims(const QueryClass& query_class, const WeightedDataset& wd) {
  for (const WeightedEntry& e : wd) {
    if (e.point.dim() != query_class.domain_dim()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "weighted point of dimension ", e.point.dim(), " for class ",
          query_class.Describe()));
    }
    if (!std::isfinite(e.weight)) {
      return absl::InvalidArgumentError("weights must be finite");
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<OracleAnswer> ExactOracle::Minimize(const QueryClass& query_class,
                                                   const WeightedDataset& wd) {
  if (absl::Status s = CheckDims(query_class, wd); !s.ok()) return s;
  absl::StatusOr<std::span<const Query>> members = query_class.Members();
  if (!members.ok()) return members.status();
  // Entries in the outer loop keep each point hot across all members; every
  // member's total is still accumulated in entry order.
  std::vector<double> totals(members->size(), 0.0);
  for (const WeightedEntry& e : wd) {
    for (std::size_t j = 0; j < members->size(); ++j) {
      if ((*members)[j].Evaluate(e.point)) totals[j] += e.weight;
    }
  }
  const Query* best = nullptr;
  double best_value = 0.0;
  for (std::size_t j = 0; j < members->size(); ++j) {
    if (best == nullptr || totals[j] < best_value) {
      best = &(*members)[j];
      best_value = totals[j];
    }
  }
  OracleAnswer answer;
  answer.query = *best;
  answer.objective = best_value;
  return answer;
}

absl::StatusOr<OracleAnswer> ExactOracle::Solve(const WeightedDataset& wd) {
  ++calls_;
  return Minimize(query_class_, wd);
}

FailurePolicy FailurePolicy::Never() { return FailurePolicy(); }

absl::StatusOr<FailurePolicy> FailurePolicy::Bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("failure probability ", p, " outside [0, 1]"));
  }
  FailurePolicy f;
  f.mode_ = Mode::kBernoulli;
  f.p_ = p;
  f.description_ = absl::StrCat("bernoulli:", p);
  return f;
}

FailurePolicy FailurePolicy::ScheduledCalls(std::set<std::int64_t> calls) {
  FailurePolicy f;
  f.mode_ = Mode::kScheduledCalls;
  f.description_ = absl::StrCat("calls:", absl::StrJoin(calls, ","));
  f.calls_ = std::move(calls);
  return f;
}

FailurePolicy FailurePolicy::Trigger(Predicate predicate,
                                     std::string description) {
  FailurePolicy f;
  f.mode_ = Mode::kTrigger;
  f.predicate_ = std::move(predicate);
  f.description_ = std::move(description);
  return f;
}

FailurePolicy FailurePolicy::TriggerOnPoint(DataPoint point) {
  std::string description =
      absl::StrCat("trigger:", absl::StrJoin(point.values(), ","));
  return Trigger(
      [point = std::move(point)](const WeightedDataset& wd) {
        return std::any_of(wd.begin(), wd.end(), [&](const WeightedEntry& e) {
          return e.point == point;
        });
      },
      std::move(description));
}

absl::StatusOr<FailurePolicy> FailurePolicy::Parse(absl::string_view text,
                                                   int dim) {
  absl::string_view rest = absl::StripAsciiWhitespace(text);
  if (rest == "never") return Never();
  if (absl::ConsumePrefix(&rest, "bernoulli:")) {
    double p;
    if (!absl::SimpleAtod(rest, &p)) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad failure probability '", rest, "'"));
    }
    return Bernoulli(p);
  }
  if (absl::ConsumePrefix(&rest, "calls:")) {
    std::set<std::int64_t> calls;
    for (absl::string_view piece : absl::StrSplit(rest, ',', absl::SkipEmpty())) {
      std::int64_t c;
      if (!absl::SimpleAtoi(piece, &c) || c < 1) {
        return absl::InvalidArgumentError(
            absl::StrCat("bad call index '", piece, "'"));
      }
      calls.insert(c);
    }
    return ScheduledCalls(std::move(calls));
  }
  if (rest == "trigger") {
    if (dim < 1) return absl::InvalidArgumentError("trigger needs a dimension");
    return TriggerOnPoint(DataPoint(std::vector<double>(dim, 0.0)));
  }
  if (absl::ConsumePrefix(&rest, "trigger:")) {
    std::vector<double> v;
    for (absl::string_view piece : absl::StrSplit(rest, ',')) {
      double x;
      if (!absl::SimpleAtod(piece, &x)) {
        return absl::InvalidArgumentError(
            absl::StrCat("bad trigger coordinate '", piece, "'"));
      }
      v.push_back(x);
    }
    if (static_cast<int>(v.size()) != dim) {
      return absl::InvalidArgumentError(absl::StrCat(
          "trigger point has ", v.size(), " coordinates, expected ", dim));
    }
    return TriggerOnPoint(DataPoint(std::move(v)));
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown failure policy '", text, "'"));
}

bool FailurePolicy::Triggers(std::int64_t call_index, const WeightedDataset& wd,
                             Rng& rng) const {
  switch (mode_) {
    case Mode::kNever:
      return false;
    case Mode::kBernoulli:
      return rng.Bernoulli(p_);
    case Mode::kScheduledCalls:
      return calls_.contains(call_index);
    case Mode::kTrigger:
      return predicate_(wd);
  }
  return false;
}

absl::StatusOr<OracleAnswer> CertifiableOracle::Solve(const WeightedDataset& wd) {
  ++calls_;
  if (absl::Status s = CheckDims(query_class_, wd); !s.ok()) return s;
  if (policy_.Triggers(calls_, wd, rng_)) return OracleAnswer::Fail();
  return ExactOracle::Minimize(query_class_, wd);
}

Query LexicographicallyLast(const Query& /*argmin*/,
                            std::span<const Query> members) {
  return members.back();
}

absl::StatusOr<OracleAnswer> NonCertifiableOracle::Solve(
    const WeightedDataset& wd) {
  ++calls_;
  absl::StatusOr<OracleAnswer> exact = ExactOracle::Minimize(query_class_, wd);
  if (!exact.ok()) return exact;
  if (!policy_.Triggers(calls_, wd, rng_)) return exact;
  absl::StatusOr<std::span<const Query>> members = query_class_.Members();
  if (!members.ok()) return members.status();
  OracleAnswer corrupted;
  corrupted.query = corruption_(*exact->query, *members);
  corrupted.objective = EvalWeighted(*corrupted.query, wd);
  return corrupted;
}

namespace {

// Forwards to the heuristic; answers its failures exactly and counts them.
class CouplingOracle : public WeightedOracle {
 public:
  CouplingOracle(const QueryClass& query_class, WeightedOracle& heuristic)
      : query_class_(query_class), heuristic_(heuristic) {}

  absl::StatusOr<OracleAnswer> Solve(const WeightedDataset& wd) override {
    ++calls_;
    absl::StatusOr<OracleAnswer> answer = heuristic_.Solve(wd);
    if (!answer.ok() || !answer->failed()) return answer;
    ++failures_;
    return ExactOracle::Minimize(query_class_, wd);
  }

  std::int64_t failures() const { return failures_; }

 private:
  const QueryClass& query_class_;
  WeightedOracle& heuristic_;
  std::int64_t failures_ = 0;
};

}  // namespace

absl::StatusOr<CoupledOutcome> CoupledRun(const OracleAlgorithm& algorithm,
                                          const Dataset& s, std::uint64_t seed,
                                          const QueryClass& query_class,
                                          WeightedOracle& heuristic) {
  CouplingOracle oracle(query_class, heuristic);
  Rng rng(seed);
  absl::StatusOr<std::optional<Query>> out = algorithm(s, rng, oracle);
  if (!out.ok()) return out.status();
  if (!out->has_value()) {
    return absl::InternalError("algorithm failed under a non-failing oracle");
  }
  CoupledOutcome outcome{**out, std::nullopt, oracle.failures()};
  if (outcome.failed_calls == 0) outcome.heuristic = outcome.ideal;
  return outcome;
}

}  // namespace oracle_dp
