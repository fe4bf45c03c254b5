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

#include "oracle_dp/core/query_class.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <unordered_set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "oracle_dp/core/separator.h"

namespace oracle_dp {
namespace {

// Number of ordered rule sequences of a 1-decision list over d variables,
// including the default bit: 2 * sum_l P(d, l) 2^l.
double LogDecisionListSyntacticCount(int dim) {
  double total = 0.0;
  double term = 1.0;  // P(d, l) 2^l
  for (int l = 0; l <= dim; ++l) {
    total += term;
    term *= 2.0 * (dim - l);
  }
  return std::log(2.0 * total);
}

std::vector<Query> EnumerateSubsetFamily(Family family, int dim) {
  std::vector<Query> out;
  const std::uint64_t count = std::uint64_t{1} << dim;
  out.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::vector<int> indices;
    for (int j = 0; j < dim; ++j) {
      if ((mask >> j) & 1ULL) indices.push_back(j);
    }
    absl::StatusOr<Query> q =
        family == Family::kConjunction  ? Query::Conjunction(dim, indices)
        : family == Family::kDisjunction ? Query::Disjunction(dim, indices)
                                         : Query::Parity(dim, indices);
    out.push_back(*std::move(q));
  }
  return out;
}

std::vector<Query> EnumerateHalfspaces(int dim, const std::vector<double>& grid) {
  std::vector<Query> out;
  std::vector<std::size_t> digits(dim, 0);
  while (true) {
    std::vector<double> w(dim);
    for (int j = 0; j < dim; ++j) w[j] = grid[digits[j]];
    out.push_back(*Query::Halfspace(std::move(w)));
    int j = dim - 1;
    while (j >= 0 && ++digits[j] == grid.size()) digits[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

// Distinct 1-decision list functions; the canonical-smallest syntax
// represents each truth table. Requires dim <= 6 (64-entry truth tables).
std::vector<Query> EnumerateDecisionLists(int dim) {
  std::vector<Query> all;
  std::vector<DecisionRule> prefix;
  std::vector<bool> used(dim, false);
  std::function<void()> recurse = [&]() {
    for (int b = 0; b <= 1; ++b) {
      all.push_back(*Query::DecisionList(dim, prefix, b));
    }
    for (int i = 0; i < dim; ++i) {
      if (used[i]) continue;
      used[i] = true;
      for (int out = 0; out <= 1; ++out) {
        prefix.push_back({i, out});
        recurse();
        prefix.pop_back();
      }
      used[i] = false;
    }
  };
  recurse();
  std::sort(all.begin(), all.end());

  std::vector<DataPoint> universe;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << dim); ++m) {
    universe.push_back(DataPoint::FromMask(m, dim));
  }
  std::unordered_set<std::uint64_t> seen;
  std::vector<Query> out;
  for (const Query& q : all) {
    std::uint64_t table = 0;
    for (std::size_t k = 0; k < universe.size(); ++k) {
      table |= static_cast<std::uint64_t>(q.Evaluate(universe[k])) << k;
    }
    if (seen.insert(table).second) out.push_back(q);
  }
  return out;
}

std::vector<DataPoint> EnumerateGrid(const std::vector<double>& coords, int dim,
                                     bool with_label) {
  std::vector<DataPoint> out;
  std::vector<std::size_t> digits(dim, 0);
  while (true) {
    std::vector<double> values(dim);
    for (int j = 0; j < dim; ++j) values[j] = coords[digits[j]];
    DataPoint p(std::move(values));
    if (with_label) {
      out.push_back(p.WithAppended(0.0));
      out.push_back(p.WithAppended(1.0));
    } else {
      out.push_back(std::move(p));
    }
    int j = dim - 1;
    while (j >= 0 && ++digits[j] == coords.size()) digits[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

absl::Status CheckGrid(const std::vector<double>& grid, absl::string_view name) {
  if (grid.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(name, " must be non-empty"));
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) {
      return absl::InvalidArgumentError(absl::StrCat(name, " must be finite"));
    }
    if (i > 0 && grid[i] <= grid[i - 1]) {
      return absl::InvalidArgumentError(
          absl::StrCat(name, " must be strictly increasing"));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<QueryClass> QueryClass::Create(ClassSpec spec,
                                              std::size_t enumeration_cap) {
  if (spec.dim < 1) {
    return absl::InvalidArgumentError("class dimension must be >= 1");
  }
  QueryClass c;
  double log_syntactic = 0.0;
  switch (spec.family) {
    case Family::kConjunction:
    case Family::kDisjunction:
    case Family::kParity:
      c.coords_ = {0.0, 1.0};
      log_syntactic = spec.dim * std::log(2.0);
      break;
    case Family::kHalfspace: {
      if (absl::Status s = CheckGrid(spec.weight_grid, "weight grid"); !s.ok()) {
        return s;
      }
      if (spec.weight_grid.front() < -1.0 || spec.weight_grid.back() > 1.0) {
        return absl::InvalidArgumentError("weight grid must lie in [-1, 1]");
      }
      if (spec.domain_grid.empty()) {
        std::vector<double> b = spec.weight_grid;
        b.push_back(0.0);
        for (double t : HalfspaceThresholds(spec.weight_grid)) b.push_back(t);
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        spec.domain_grid = std::move(b);
      }
      if (absl::Status s = CheckGrid(spec.domain_grid, "domain grid"); !s.ok()) {
        return s;
      }
      c.coords_ = spec.domain_grid;
      log_syntactic = spec.dim * std::log(spec.weight_grid.size());
      break;
    }
    case Family::kDecisionList:
      c.coords_ = {0.0, 1.0};
      log_syntactic = LogDecisionListSyntacticCount(spec.dim);
      break;
  }
  c.spec_ = std::move(spec);
  c.log_size_ = log_syntactic;

  const double log_cap = std::log(static_cast<double>(enumeration_cap));
  const bool small_dim = c.spec_.dim <= kMaxEnumerableDim &&
                         (c.spec_.family != Family::kDecisionList ||
                          c.spec_.dim <= 6);
  if (small_dim && log_syntactic <= log_cap + 1e-9) {
    std::vector<Query> members;
    switch (c.spec_.family) {
      case Family::kConjunction:
      case Family::kDisjunction:
      case Family::kParity:
        members = EnumerateSubsetFamily(c.spec_.family, c.spec_.dim);
        break;
      case Family::kHalfspace:
        members = EnumerateHalfspaces(c.spec_.dim, c.spec_.weight_grid);
        break;
      case Family::kDecisionList:
        members = EnumerateDecisionLists(c.spec_.dim);
        break;
    }
    if (c.spec_.loss_lift) {
      for (Query& q : members) q = q.LossLifted();
    }
    std::sort(members.begin(), members.end());
    c.log_size_ = std::log(static_cast<double>(members.size()));
    c.members_ = std::make_shared<const std::vector<Query>>(std::move(members));
  }

  if (c.spec_.dim <= kMaxEnumerableDim &&
      c.log_universe_size() <= log_cap + 1e-9) {
    c.universe_ = std::make_shared<const std::vector<DataPoint>>(
        EnumerateGrid(c.coords_, c.spec_.dim, c.spec_.loss_lift));
  }
  return c;
}

absl::StatusOr<std::span<const Query>> QueryClass::Members() const {
  if (members_ == nullptr) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "class ", Describe(), " is too large to enumerate (ln|Q| = ",
        log_size_, ")"));
  }
  return std::span<const Query>(*members_);
}

double QueryClass::log_universe_size() const {
  double log_x = spec_.dim * std::log(static_cast<double>(coords_.size()));
  if (spec_.loss_lift) log_x += std::log(2.0);
  return log_x;
}

absl::StatusOr<std::span<const DataPoint>> QueryClass::Universe() const {
  if (universe_ == nullptr) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "universe of ", Describe(), " is too large to enumerate"));
  }
  return std::span<const DataPoint>(*universe_);
}

bool QueryClass::Contains(const DataPoint& x) const {
  if (x.dim() != domain_dim()) return false;
  for (int j = 0; j < spec_.dim; ++j) {
    if (!std::binary_search(coords_.begin(), coords_.end(), x[j])) return false;
  }
  if (spec_.loss_lift && x[spec_.dim] != 0.0 && x[spec_.dim] != 1.0) {
    return false;
  }
  return true;
}

Query QueryClass::FirstMember() const {
  Query q = *Query::Conjunction(spec_.dim, {});
  switch (spec_.family) {
    case Family::kConjunction:
      break;
    case Family::kDisjunction:
      q = *Query::Disjunction(spec_.dim, {});
      break;
    case Family::kParity:
      q = *Query::Parity(spec_.dim, {});
      break;
    case Family::kHalfspace:
      q = *Query::Halfspace(
          std::vector<double>(spec_.dim, spec_.weight_grid.front()));
      break;
    case Family::kDecisionList:
      q = *Query::DecisionList(spec_.dim, {}, 0);
      break;
  }
  return spec_.loss_lift ? q.LossLifted() : q;
}

std::string QueryClass::Describe() const {
  std::string out = absl::StrCat(spec_.loss_lift ? "loss:" : "",
                                 FamilyName(spec_.family), "/d=", spec_.dim);
  if (spec_.family == Family::kHalfspace) {
    absl::StrAppend(&out, "/V={", absl::StrJoin(spec_.weight_grid, ","), "}");
  }
  return out;
}

absl::StatusOr<QueryClass> LiftToLossClass(const QueryClass& hyp_class) {
  if (hyp_class.spec().loss_lift) {
    return absl::InvalidArgumentError("class is already a loss class");
  }
  ClassSpec spec = hyp_class.spec();
  spec.loss_lift = true;
  return QueryClass::Create(std::move(spec));
}

absl::StatusOr<QueryClass> MakeBooleanClass(Family family, int dim,
                                            bool loss_lift) {
  if (family == Family::kHalfspace) {
    return absl::InvalidArgumentError("halfspaces need a weight grid");
  }
  ClassSpec spec;
  spec.family = family;
  spec.dim = dim;
  spec.loss_lift = loss_lift;
  return QueryClass::Create(std::move(spec));
}

}  // namespace oracle_dp
