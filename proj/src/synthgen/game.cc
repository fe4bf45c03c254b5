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

#include "oracle_dp/synthgen/game.h"

#include <algorithm>
#include <cmath>

namespace oracle_dp {

absl::StatusOr<double> Payoff(const Dataset& s, const DataPoint& x,
                              const Query& q) {
  absl::StatusOr<double> qs = EvalOnDataset(q, s);
  if (!qs.ok()) return qs.status();
  absl::StatusOr<int> qx = EvalQuery(q, x);
  if (!qx.ok()) return qx.status();
  return *qs - *qx;
}

double MixedPayoff(std::span<const DataPoint> s,
                   std::span<const DataPoint> s_hat, const Query& q) {
  return EvalOnPoints(q, s) - EvalOnPoints(q, s_hat);
}

absl::StatusOr<double> MaxQueryError(std::span<const DataPoint> s,
                                     std::span<const DataPoint> s_hat,
                                     const QueryClass& query_class) {
  absl::StatusOr<std::span<const Query>> members = query_class.Members();
  if (!members.ok()) return members.status();
  double worst = 0.0;
  for (const Query& q : *members) {
    for (const Query& v : {q, q.Negated()}) {
      worst = std::max(worst, std::abs(MixedPayoff(s, s_hat, v)));
    }
  }
  return worst;
}

absl::StatusOr<double> BestResponseValue(std::span<const DataPoint> s,
                                         std::span<const DataPoint> s_hat,
                                         const QueryClass& query_class) {
  absl::StatusOr<std::span<const Query>> members = query_class.Members();
  if (!members.ok()) return members.status();
  double best = -1.0;
  for (const Query& q : *members) {
    for (const Query& v : {q, q.Negated()}) {
      best = std::max(best, MixedPayoff(s, s_hat, v));
    }
  }
  return best;
}

}  // namespace oracle_dp
