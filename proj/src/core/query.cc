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

#include "oracle_dp/core/query.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace oracle_dp {
namespace {

absl::Status CheckIndices(int dim, const std::vector<int>& indices) {
  if (dim < 0) return absl::InvalidArgumentError("dimension must be >= 0");
  std::set<int> seen;
  for (int i : indices) {
    if (i < 0 || i >= dim) {
      return absl::InvalidArgumentError(
          absl::StrCat("index ", i, " outside [0, ", dim, ")"));
    }
    if (!seen.insert(i).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate index ", i));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kConjunction:
      return "conj";
    case Family::kDisjunction:
      return "disj";
    case Family::kParity:
      return "par";
    case Family::kHalfspace:
      return "half";
    case Family::kDecisionList:
      return "dl1";
  }
  return "?";
}

absl::StatusOr<Family> ParseFamily(absl::string_view name) {
  for (Family f : {Family::kConjunction, Family::kDisjunction, Family::kParity,
                   Family::kHalfspace, Family::kDecisionList}) {
    if (name == FamilyName(f)) return f;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown query family '", name, "'"));
}

absl::StatusOr<Query> Query::Conjunction(int dim, std::vector<int> indices) {
  if (absl::Status s = CheckIndices(dim, indices); !s.ok()) return s;
  std::sort(indices.begin(), indices.end());
  Query q;
  q.family_ = Family::kConjunction;
  q.dim_ = dim;
  q.indices_ = std::move(indices);
  return q;
}

absl::StatusOr<Query> Query::Disjunction(int dim, std::vector<int> indices) {
  absl::StatusOr<Query> q = Conjunction(dim, std::move(indices));
  if (q.ok()) q->family_ = Family::kDisjunction;
  return q;
}

absl::StatusOr<Query> Query::Parity(int dim, std::vector<int> indices) {
  absl::StatusOr<Query> q = Conjunction(dim, std::move(indices));
  if (q.ok()) q->family_ = Family::kParity;
  return q;
}

absl::StatusOr<Query> Query::Halfspace(std::vector<double> weights) {
  for (double w : weights) {
    if (!std::isfinite(w) || w < -1.0 || w > 1.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("halfspace weight ", w, " outside [-1, 1]"));
    }
  }
  Query q;
  q.family_ = Family::kHalfspace;
  q.dim_ = static_cast<int>(weights.size());
  q.weights_ = std::move(weights);
  return q;
}

absl::StatusOr<Query> Query::DecisionList(int dim,
                                          std::vector<DecisionRule> rules,
                                          int default_bit) {
  std::vector<int> indices;
  for (const DecisionRule& r : rules) {
    if (r.output != 0 && r.output != 1) {
      return absl::InvalidArgumentError("decision list outputs must be bits");
    }
    indices.push_back(r.index);
  }
  if (absl::Status s = CheckIndices(dim, indices); !s.ok()) return s;
  if (default_bit != 0 && default_bit != 1) {
    return absl::InvalidArgumentError("decision list default must be a bit");
  }
  Query q;
  q.family_ = Family::kDecisionList;
  q.dim_ = dim;
  q.rules_ = std::move(rules);
  q.default_bit_ = default_bit;
  return q;
}

Query Query::Negated() const {
  Query q = *this;
  q.negated_ = !negated_;
  return q;
}

Query Query::LossLifted() const {
  Query q = *this;
  q.loss_lift_ = true;
  return q;
}

Query Query::Base() const {
  Query q = *this;
  q.negated_ = false;
  return q;
}

int Query::EvaluateHypothesis(const DataPoint& x) const {
  switch (family_) {
    case Family::kConjunction:
      for (int i : indices_) {
        if (x[i] == 0.0) return 0;
      }
      return 1;
    case Family::kDisjunction:
      for (int i : indices_) {
        if (x[i] != 0.0) return 1;
      }
      return 0;
    case Family::kParity: {
      int parity = 0;
      for (int i : indices_) parity ^= (x[i] != 0.0);
      return parity;
    }
    case Family::kHalfspace: {
      double dot = 0.0;
      for (int j = 0; j < dim_; ++j) dot += weights_[j] * x[j];
      return dot >= 1.0 ? 1 : 0;
    }
    case Family::kDecisionList:
      for (const DecisionRule& r : rules_) {
        if (x[r.index] != 0.0) return r.output;
      }
      return default_bit_;
  }
  return 0;
}

int Query::Evaluate(const DataPoint& x) const {
  int value = EvaluateHypothesis(x);
  if (loss_lift_) value ^= (x[dim_] != 0.0);
  return negated_ ? 1 - value : value;
}

std::string Query::Encode() const {
  std::string payload;
  switch (family_) {
    case Family::kConjunction:
    case Family::kDisjunction:
    case Family::kParity:
      payload = absl::StrJoin(indices_, ",");
      break;
    case Family::kHalfspace:
      payload = absl::StrJoin(weights_, ",");
      break;
    case Family::kDecisionList:
      payload = absl::StrCat(
          absl::StrJoin(rules_, ",",
                        [](std::string* out, const DecisionRule& r) {
                          absl::StrAppend(out, r.index, ":", r.output);
                        }),
          "|", default_bit_);
      break;
  }
  return absl::StrCat(negated_ ? "!" : "", loss_lift_ ? "loss:" : "",
                      FamilyName(family_), "{", payload, "}");
}

std::strong_ordering operator<=>(const Query& a, const Query& b) {
  if (auto c = a.loss_lift_ <=> b.loss_lift_; c != 0) return c;
  if (auto c = a.family_ <=> b.family_; c != 0) return c;
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  if (auto c = a.indices_ <=> b.indices_; c != 0) return c;
  // Grid weights are finite, so the partial order is total here.
  if (a.weights_ != b.weights_) {
    return std::lexicographical_compare(a.weights_.begin(), a.weights_.end(),
                                        b.weights_.begin(), b.weights_.end())
               ? std::strong_ordering::less
               : std::strong_ordering::greater;
  }
  if (auto c = a.rules_ <=> b.rules_; c != 0) return c;
  if (auto c = a.default_bit_ <=> b.default_bit_; c != 0) return c;
  return a.negated_ <=> b.negated_;
}

absl::StatusOr<Query> ParseQuery(absl::string_view encoding, int dim) {
  absl::string_view rest = encoding;
  const bool negated = absl::ConsumePrefix(&rest, "!");
  const bool lifted = absl::ConsumePrefix(&rest, "loss:");
  const std::size_t open = rest.find('{');
  if (open == absl::string_view::npos || !absl::EndsWith(rest, "}")) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed query encoding '", encoding, "'"));
  }
  absl::StatusOr<Family> family = ParseFamily(rest.substr(0, open));
  if (!family.ok()) return family.status();
  absl::string_view payload = rest.substr(open + 1, rest.size() - open - 2);

  auto parse_ints = [&](absl::string_view text) -> absl::StatusOr<std::vector<int>> {
    std::vector<int> out;
    if (text.empty()) return out;
    for (absl::string_view piece : absl::StrSplit(text, ',')) {
      int v;
      if (!absl::SimpleAtoi(piece, &v)) {
        return absl::InvalidArgumentError(
            absl::StrCat("bad index '", piece, "' in '", encoding, "'"));
      }
      out.push_back(v);
    }
    return out;
  };

  absl::StatusOr<Query> q = absl::InvalidArgumentError("unreachable");
  switch (*family) {
    case Family::kConjunction:
    case Family::kDisjunction:
    case Family::kParity: {
      absl::StatusOr<std::vector<int>> idx = parse_ints(payload);
      if (!idx.ok()) return idx.status();
      if (*family == Family::kConjunction) q = Query::Conjunction(dim, *idx);
      if (*family == Family::kDisjunction) q = Query::Disjunction(dim, *idx);
      if (*family == Family::kParity) q = Query::Parity(dim, *idx);
      break;
    }
    case Family::kHalfspace: {
      std::vector<double> w;
      for (absl::string_view piece : absl::StrSplit(payload, ',')) {
        double v;
        if (!absl::SimpleAtod(piece, &v)) {
          return absl::InvalidArgumentError(
              absl::StrCat("bad weight '", piece, "' in '", encoding, "'"));
        }
        w.push_back(v);
      }
      q = Query::Halfspace(std::move(w));
      break;
    }
    case Family::kDecisionList: {
      std::vector<absl::string_view> halves = absl::StrSplit(payload, '|');
      int default_bit;
      if (halves.size() != 2 || !absl::SimpleAtoi(halves[1], &default_bit)) {
        return absl::InvalidArgumentError(
            absl::StrCat("malformed decision list '", encoding, "'"));
      }
      std::vector<DecisionRule> rules;
      if (!halves[0].empty()) {
        for (absl::string_view piece : absl::StrSplit(halves[0], ',')) {
          std::vector<absl::string_view> kv = absl::StrSplit(piece, ':');
          DecisionRule r;
          if (kv.size() != 2 || !absl::SimpleAtoi(kv[0], &r.index) ||
              !absl::SimpleAtoi(kv[1], &r.output)) {
            return absl::InvalidArgumentError(
                absl::StrCat("malformed rule '", piece, "'"));
          }
          rules.push_back(r);
        }
      }
      q = Query::DecisionList(dim, std::move(rules), default_bit);
      break;
    }
  }
  if (!q.ok()) return q;
  Query out = lifted ? q->LossLifted() : *q;
  return negated ? out.Negated() : out;
}

absl::StatusOr<int> EvalQuery(const Query& q, const DataPoint& x) {
  if (x.dim() != q.domain_dim()) {
    return absl::InvalidArgumentError(
        absl::StrCat("point dimension ", x.dim(), " does not match query ",
                     q.Encode(), " of dimension ", q.domain_dim()));
  }
  return q.Evaluate(x);
}

absl::StatusOr<double> EvalOnDataset(const Query& q, const Dataset& s) {
  if (s.dim() != q.domain_dim()) {
    return absl::InvalidArgumentError(
        absl::StrCat("dataset dimension ", s.dim(), " does not match query ",
                     q.Encode(), " of dimension ", q.domain_dim()));
  }
  return EvalOnPoints(q, s.points());
}

double EvalOnPoints(const Query& q, std::span<const DataPoint> points) {
  if (points.empty()) return 0.0;
  long long count = 0;
  for (const DataPoint& x : points) count += q.Evaluate(x);
  return static_cast<double>(count) / static_cast<double>(points.size());
}

double EvalWeighted(const Query& q, const WeightedDataset& wd) {
  double total = 0.0;
  for (const WeightedEntry& e : wd) {
    if (q.Evaluate(e.point)) total += e.weight;
  }
  return total;
}

}  // namespace oracle_dp
