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

#include "oracle_dp/oracles/dual_oracle.h"

#include "absl/strings/str_cat.h"

namespace oracle_dp {

absl::StatusOr<std::optional<DataPoint>> ExactDualOracle::Solve(
    const WeightedQuerySet& wq) {
  ++calls_;
  absl::StatusOr<std::span<const DataPoint>> universe = query_class_.Universe();
  if (!universe.ok()) return universe.status();
  for (const WeightedQuery& e : wq) {
    if (e.query.domain_dim() != query_class_.domain_dim()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "query ", e.query.Encode(), " does not act on ",
          query_class_.Describe()));
    }
  }
  const DataPoint* best = nullptr;
  double best_value = 0.0;
  for (const DataPoint& x : *universe) {
    double v = 0.0;
    for (const WeightedQuery& e : wq) {
      if (e.query.Evaluate(x)) v += e.weight;
    }
    if (best == nullptr || v < best_value) {
      best = &x;
      best_value = v;
    }
  }
  return *best;
}

}  // namespace oracle_dp
