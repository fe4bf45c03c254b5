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

#include "oracle_dp/core/separator.h"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "absl/strings/str_cat.h"

namespace oracle_dp {
namespace {

using Signature = std::vector<std::uint64_t>;

template <typename Fn>
Signature SignatureOf(std::size_t width, Fn&& bit_at) {
  Signature sig((width + 63) / 64, 0);
  for (std::size_t k = 0; k < width; ++k) {
    if (bit_at(k)) sig[k / 64] |= std::uint64_t{1} << (k % 64);
  }
  return sig;
}

bool AllPairsDiffer(const std::vector<Signature>& sigs) {
  for (std::size_t a = 0; a < sigs.size(); ++a) {
    for (std::size_t b = a + 1; b < sigs.size(); ++b) {
      if (sigs[a] == sigs[b]) return false;
    }
  }
  return true;
}

bool IsBooleanFamily(Family f) { return f != Family::kHalfspace; }

absl::StatusOr<Query> Projection(Family family, int dim, int j) {
  switch (family) {
    case Family::kConjunction:
      return Query::Conjunction(dim, {j});
    case Family::kDisjunction:
      return Query::Disjunction(dim, {j});
    case Family::kParity:
      return Query::Parity(dim, {j});
    case Family::kDecisionList:
      return Query::DecisionList(dim, {{j, 1}}, 0);
    case Family::kHalfspace:
      break;
  }
  return absl::UnimplementedError("no boolean projection for halfspaces");
}

}  // namespace

std::vector<double> HalfspaceThresholds(std::span<const double> sorted_grid) {
  std::vector<double> out;
  for (std::size_t v = 0; v + 1 < sorted_grid.size(); ++v) {
    const double a = sorted_grid[v];
    const double b = sorted_grid[v + 1];
    if (a > 0.0) {
      out.push_back(0.5 * (1.0 / b + 1.0 / a));
    } else if (b < 0.0) {
      out.push_back(0.5 * (1.0 / b + 1.0 / a));
    } else if (b > 0.0) {
      out.push_back(1.0 / b);
    } else {
      out.push_back(1.0 / a);
    }
  }
  return out;
}

absl::StatusOr<SeparatorSet> BuildSeparatorSet(const QueryClass& query_class) {
  const int d = query_class.dim();
  SeparatorSet u;
  switch (query_class.family()) {
    case Family::kConjunction:
      for (int j = 0; j < d; ++j) {
        std::vector<double> v(d, 1.0);
        v[j] = 0.0;
        u.elements.emplace_back(std::move(v));
      }
      break;
    case Family::kDisjunction:
    case Family::kParity:
      for (int j = 0; j < d; ++j) {
        std::vector<double> v(d, 0.0);
        v[j] = 1.0;
        u.elements.emplace_back(std::move(v));
      }
      break;
    case Family::kHalfspace: {
      const std::vector<double>& grid = query_class.spec().weight_grid;
      const std::vector<double> thresholds = HalfspaceThresholds(grid);
      const std::vector<double>& domain = query_class.coordinate_values();
      if (!std::binary_search(domain.begin(), domain.end(), 0.0)) {
        return absl::FailedPreconditionError(
            "halfspace separator needs 0 in the domain grid");
      }
      for (double c : thresholds) {
        if (!std::binary_search(domain.begin(), domain.end(), c)) {
          return absl::FailedPreconditionError(absl::StrCat(
              "halfspace separator threshold ", c, " is not in the domain grid"));
        }
      }
      for (int j = 0; j < d; ++j) {
        for (double c : thresholds) {
          std::vector<double> v(d, 0.0);
          v[j] = c;
          u.elements.emplace_back(std::move(v));
        }
      }
      break;
    }
    case Family::kDecisionList: {
      if (d > 62) {
        return absl::UnimplementedError("decision lists limited to d <= 62");
      }
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << d); ++m) {
        if (std::popcount(m) <= 2) u.elements.push_back(DataPoint::FromMask(m, d));
      }
      break;
    }
  }
  if (query_class.spec().loss_lift) {
    for (DataPoint& e : u.elements) e = e.WithAppended(0.0);
  }
  return u;
}

absl::StatusOr<bool> VerifySeparator(const QueryClass& query_class,
                                     std::span<const DataPoint> candidate) {
  absl::StatusOr<std::span<const Query>> members = query_class.Members();
  if (!members.ok()) return members.status();
  for (const DataPoint& u : candidate) {
    if (!query_class.Contains(u)) return false;
  }
  std::vector<Signature> sigs;
  sigs.reserve(members->size());
  for (const Query& q : *members) {
    sigs.push_back(SignatureOf(candidate.size(), [&](std::size_t k) {
      return q.Evaluate(candidate[k]) != 0;
    }));
  }
  return AllPairsDiffer(sigs);
}

absl::StatusOr<DualClass> DualView(const QueryClass& query_class) {
  const ClassSpec& spec = query_class.spec();
  const int d = spec.dim;
  DualClass dual{query_class, false, {}};
  if (IsBooleanFamily(spec.family)) {
    for (int j = 0; j < d; ++j) {
      absl::StatusOr<Query> q = Projection(spec.family, d, j);
      if (!q.ok()) return q.status();
      dual.separator.push_back(spec.loss_lift ? q->LossLifted() : *q);
    }
    if (spec.loss_lift) {
      // A projection lifted to x_j XOR y cannot separate points differing
      // in both x_j and y; the lifted constant query separates the label.
      dual.separator.push_back(query_class.FirstMember());
    }
    dual.self_dual = !spec.loss_lift && spec.family != Family::kDecisionList;
    return dual;
  }

  // Halfspaces: the dual of Q_V over B^d is Q_B over V^d.
  if (spec.loss_lift) {
    return absl::UnimplementedError("dual of lifted halfspaces");
  }
  const std::vector<double>& weights = spec.weight_grid;
  const std::vector<double>& domain = query_class.coordinate_values();
  if (!std::binary_search(weights.begin(), weights.end(), 0.0)) {
    return absl::FailedPreconditionError(
        "dual halfspace separator needs 0 in the weight grid");
  }
  for (double c : HalfspaceThresholds(domain)) {
    if (!std::binary_search(weights.begin(), weights.end(), c)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "dual separator threshold ", c, " is not in the weight grid"));
    }
  }
  for (int j = 0; j < d; ++j) {
    for (double c : HalfspaceThresholds(domain)) {
      std::vector<double> w(d, 0.0);
      w[j] = c;
      absl::StatusOr<Query> q = Query::Halfspace(std::move(w));
      if (!q.ok()) return q.status();
      dual.separator.push_back(*std::move(q));
    }
  }
  dual.self_dual = weights == domain;
  return dual;
}

absl::StatusOr<bool> VerifyDualSeparator(const QueryClass& query_class,
                                         std::span<const Query> candidate) {
  absl::StatusOr<std::span<const DataPoint>> universe = query_class.Universe();
  if (!universe.ok()) return universe.status();
  std::vector<Signature> sigs;
  sigs.reserve(universe->size());
  for (const DataPoint& x : *universe) {
    sigs.push_back(SignatureOf(candidate.size(), [&](std::size_t k) {
      return candidate[k].Evaluate(x) != 0;
    }));
  }
  return AllPairsDiffer(sigs);
}

absl::StatusOr<Query> DualQueryOf(const QueryClass& query_class,
                                  const DataPoint& x) {
  const ClassSpec& spec = query_class.spec();
  if (spec.loss_lift || x.dim() != spec.dim) {
    return absl::InvalidArgumentError("dual relabeling needs an unlifted point");
  }
  std::vector<int> ones, zeros;
  for (int j = 0; j < spec.dim; ++j) (x[j] != 0.0 ? ones : zeros).push_back(j);
  switch (spec.family) {
    case Family::kConjunction:
      return Query::Conjunction(spec.dim, zeros);
    case Family::kDisjunction:
      return Query::Disjunction(spec.dim, ones);
    case Family::kParity:
      return Query::Parity(spec.dim, ones);
    case Family::kHalfspace:
      if (spec.weight_grid != query_class.coordinate_values()) break;
      return Query::Halfspace(
          std::vector<double>(x.values().begin(), x.values().end()));
    case Family::kDecisionList:
      break;
  }
  return absl::UnimplementedError(
      absl::StrCat(query_class.Describe(), " is not self-dual"));
}

absl::StatusOr<DataPoint> DualPointOf(const QueryClass& query_class,
                                      const Query& q) {
  const ClassSpec& spec = query_class.spec();
  if (q.negated() || q.loss_lift() || q.family() != spec.family ||
      q.dim() != spec.dim) {
    return absl::InvalidArgumentError(
        absl::StrCat("query ", q.Encode(), " is not a base member"));
  }
  std::vector<double> v(spec.dim, 0.0);
  switch (spec.family) {
    case Family::kConjunction:
      std::fill(v.begin(), v.end(), 1.0);
      for (int j : q.indices()) v[j] = 0.0;
      return DataPoint(std::move(v));
    case Family::kDisjunction:
    case Family::kParity:
      for (int j : q.indices()) v[j] = 1.0;
      return DataPoint(std::move(v));
    case Family::kHalfspace:
      if (spec.weight_grid != query_class.coordinate_values()) break;
      return DataPoint(q.weights());
    case Family::kDecisionList:
      break;
  }
  return absl::UnimplementedError(
      absl::StrCat(query_class.Describe(), " is not self-dual"));
}

}  // namespace oracle_dp
