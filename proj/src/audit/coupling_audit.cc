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

#include "oracle_dp/audit/coupling_audit.h"

#include <cmath>
#include <optional>
#include <set>

#include "oracle_dp/core/parallel.h"

namespace oracle_dp {

absl::StatusOr<CouplingReport> CouplingAudit(const OracleAlgorithm& algorithm,
                                             const Dataset& s,
                                             const QueryClass& query_class,
                                             const FailurePolicy& policy,
                                             std::int64_t runs,
                                             std::uint64_t base_seed,
                                             int threads) {
  if (runs < 1) return absl::InvalidArgumentError("runs must be >= 1");
  std::vector<std::optional<CoupledOutcome>> outcomes(runs);
  absl::Status status =
      ParallelFor(runs, threads, [&](std::int64_t i) -> absl::Status {
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(i);
        CertifiableOracle heuristic(query_class, policy,
                                    Rng(seed).Split(0xfa11));
        absl::StatusOr<CoupledOutcome> out =
            CoupledRun(algorithm, s, seed, query_class, heuristic);
        if (!out.ok()) return out.status();
        outcomes[i] = *std::move(out);
        return absl::OkStatus();
      });
  if (!status.ok()) return status;

  CouplingReport report;
  report.runs = runs;
  FrequencyTable ideal;
  FrequencyTable heuristic;
  for (const std::optional<CoupledOutcome>& o : outcomes) {
    ++ideal[o->ideal.Encode()];
    if (!o->heuristic.has_value()) {
      ++report.heuristic_failures;
      continue;
    }
    if (!(*o->heuristic == o->ideal)) ++report.mismatches;
    ++heuristic[o->heuristic->Encode()];
  }
  report.ideal = Normalized(ideal);
  report.heuristic = Normalized(heuristic);
  report.tv = TvDistance(report.ideal, report.heuristic);
  std::set<std::string> labels;
  for (const auto& [l, c] : ideal) labels.insert(l);
  for (const auto& [l, c] : heuristic) labels.insert(l);
  const double k = static_cast<double>(labels.size());
  const double n_heuristic = static_cast<double>(runs - report.heuristic_failures);
  report.tv_slack =
      (std::sqrt(k / runs) + (n_heuristic > 0 ? std::sqrt(k / n_heuristic) : 1.0)) /
      2;
  return report;
}

}  // namespace oracle_dp
