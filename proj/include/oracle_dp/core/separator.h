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

#ifndef ORACLE_DP_CORE_SEPARATOR_H_
#define ORACLE_DP_CORE_SEPARATOR_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "oracle_dp/core/data_point.h"
#include "oracle_dp/core/query.h"
#include "oracle_dp/core/query_class.h"

namespace oracle_dp {

// A set U of universe elements such that any two distinct queries of the
// class disagree on some element of U.
struct SeparatorSet {
  std::vector<DataPoint> elements;
  int size() const { return static_cast<int>(elements.size()); }
};

// Separator thresholds c_1..c_{|V|-1} for a sorted, duplicate-free weight
// grid. For every adjacent pair a < b of the grid, c is chosen so that
// exactly one of a*c >= 1 and b*c >= 1 holds:
//   0 < a < b:  c in [1/b, 1/a), midpoint
//   a < b < 0:  c in (1/b, 1/a], midpoint
//   a <= 0 < b: c = 1/b
//   a < b = 0:  c = 1/a
std::vector<double> HalfspaceThresholds(std::span<const double> sorted_grid);

// The standard construction per family:
//   conjunctions            {e-bar_j}: one zero, ones elsewhere
//   disjunctions, parities  {e_j}: one-hot vectors
//   halfspaces              {c_v e_j}: (|V|-1) d scaled axis points
//   1-decision lists        all points of Hamming weight <= 2
// Loss classes use {(u, 0) : u in U_H}.
absl::StatusOr<SeparatorSet> BuildSeparatorSet(const QueryClass& query_class);

// Exhaustive pair check: true iff every pair of distinct members is
// separated by some element of `candidate`.
absl::StatusOr<bool> VerifySeparator(const QueryClass& query_class,
                                     std::span<const DataPoint> candidate);

// The dual of a class swaps points and queries: h_x(q) = q(x). Its
// separator consists of queries that tell universe points apart.
struct DualClass {
  QueryClass primal;
  bool self_dual = false;
  std::vector<Query> separator;
  int separator_size() const { return static_cast<int>(separator.size()); }
};

absl::StatusOr<DualClass> DualView(const QueryClass& query_class);

// Exhaustive check that `candidate` separates every pair of distinct
// universe points.
absl::StatusOr<bool> VerifyDualSeparator(const QueryClass& query_class,
                                         std::span<const Query> candidate);

// Self-dual relabeling: DualQueryOf(x).Evaluate(DualPointOf(q)) == q(x) for
// every base member q and point x. Unsupported for classes that are not
// self-dual.
absl::StatusOr<Query> DualQueryOf(const QueryClass& query_class,
                                  const DataPoint& x);
absl::StatusOr<DataPoint> DualPointOf(const QueryClass& query_class,
                                      const Query& q);

}  // namespace oracle_dp

#endif  // ORACLE_DP_CORE_SEPARATOR_H_
