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

#ifndef ORACLE_DP_ORACLES_DUAL_ORACLE_H_
#define ORACLE_DP_ORACLES_DUAL_ORACLE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "oracle_dp/core/data_point.h"
#include "oracle_dp/core/query.h"
#include "oracle_dp/core/query_class.h"

namespace oracle_dp {

struct WeightedQuery {
  Query query;
  double weight = 0.0;
};

using WeightedQuerySet = std::vector<WeightedQuery>;

// Weighted optimization oracle for the dual class: returns a point of
// argmin_x sum_k w_k q_k(x), or nullopt on Fail.
class DualOracle {
 public:
  virtual ~DualOracle() = default;
  virtual absl::StatusOr<std::optional<DataPoint>> Solve(
      const WeightedQuerySet& wq) = 0;
  std::int64_t calls() const { return calls_; }

 protected:
  std::int64_t calls_ = 0;
};

// Brute force over the enumerated universe; ties go to the
// lexicographically first point.
class ExactDualOracle : public DualOracle {
 public:
  explicit ExactDualOracle(QueryClass query_class)
      : query_class_(std::move(query_class)) {}

  absl::StatusOr<std::optional<DataPoint>> Solve(
      const WeightedQuerySet& wq) override;

 private:
  QueryClass query_class_;
};

}  // namespace oracle_dp

#endif  // ORACLE_DP_ORACLES_DUAL_ORACLE_H_
