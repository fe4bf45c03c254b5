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

#ifndef ORACLE_DP_SYNTHGEN_GAME_H_
#define ORACLE_DP_SYNTHGEN_GAME_H_

#include <span>

#include "absl/status/statusor.h"
#include "oracle_dp/core/data_point.h"
#include "oracle_dp/core/query.h"
#include "oracle_dp/core/query_class.h"

namespace oracle_dp {

// Query release game payoff A(x, q) = q(S) - q(x), in [-1, 1].
absl::StatusOr<double> Payoff(const Dataset& s, const DataPoint& x,
                              const Query& q);

// Mixed extension over the empirical distribution of `s_hat`:
// A(S_hat, q) = q(S) - q(S_hat).
double MixedPayoff(std::span<const DataPoint> s,
                   std::span<const DataPoint> s_hat, const Query& q);

// max over Q and its negations of |q(S) - q(S_hat)|.
absl::StatusOr<double> MaxQueryError(std::span<const DataPoint> s,
                                     std::span<const DataPoint> s_hat,
                                     const QueryClass& query_class);

// max over Q and its negations of A(S_hat, q); the query player's best
// response value against S_hat.
absl::StatusOr<double> BestResponseValue(std::span<const DataPoint> s,
                                         std::span<const DataPoint> s_hat,
                                         const QueryClass& query_class);

}  // namespace oracle_dp

#endif  // ORACLE_DP_SYNTHGEN_GAME_H_
