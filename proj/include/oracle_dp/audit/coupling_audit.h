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

#ifndef ORACLE_DP_AUDIT_COUPLING_AUDIT_H_
#define ORACLE_DP_AUDIT_COUPLING_AUDIT_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "oracle_dp/audit/dp_audit.h"
#include "oracle_dp/core/data_point.h"
#include "oracle_dp/core/query_class.h"
#include "oracle_dp/oracles/oracle.h"

namespace oracle_dp {

struct CouplingReport {
  std::int64_t runs = 0;
  std::int64_t heuristic_failures = 0;
  // Runs where the heuristic side succeeded with a different output.
  std::int64_t mismatches = 0;
  Distribution ideal;
  // Heuristic outputs conditioned on success.
  Distribution heuristic;
  double tv = 0.0;
  // Expected-TV sampling allowance: (sqrt(k/N_ideal) + sqrt(k/N_heuristic))/2
  // for k distinct outputs.
  double tv_slack = 0.0;
};

// Runs `algorithm` under CoupledRun for seeds base_seed .. base_seed+runs-1,
// with a certifiable oracle that fails per `policy`, and compares the
// conditional heuristic outputs with the ideal ones.
absl::StatusOr<CouplingReport> CouplingAudit(const OracleAlgorithm& algorithm,
                                             const Dataset& s,
                                             const QueryClass& query_class,
                                             const FailurePolicy& policy,
                                             std::int64_t runs,
                                             std::uint64_t base_seed,
                                             int threads);

}  // namespace oracle_dp

#endif  // ORACLE_DP_AUDIT_COUPLING_AUDIT_H_
