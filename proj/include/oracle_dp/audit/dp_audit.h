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

#ifndef ORACLE_DP_AUDIT_DP_AUDIT_H_
#define ORACLE_DP_AUDIT_DP_AUDIT_H_

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "oracle_dp/core/data_point.h"
#include "oracle_dp/core/rng.h"

namespace oracle_dp {

// A mechanism with enumerable outputs, reported as labels (query encodings,
// or kFailLabel for Fail).
using LabeledMechanism =
    std::function<absl::StatusOr<std::string>(const Dataset&, Rng&)>;

inline constexpr char kFailLabel[] = "FAIL";

using FrequencyTable = std::map<std::string, std::int64_t>;
using Distribution = std::map<std::string, double>;

Distribution Normalized(const FrequencyTable& table);

// (1/2) sum |p_a - p_b| over the union of supports.
double TvDistance(const Distribution& a, const Distribution& b);

// Exact two-sided binomial interval for `successes` out of `trials` at
// confidence 1 - alpha.
struct ProportionInterval {
  double lower = 0.0;
  double upper = 1.0;
};
ProportionInterval ClopperPearson(std::int64_t successes, std::int64_t trials,
                                  double alpha);

// Every dataset obtained from `s` by replacing one record with a different
// point from `pool`, without duplicates.
std::vector<Dataset> SubstitutionNeighbors(const Dataset& s,
                                           std::span<const DataPoint> pool);

inline constexpr std::int64_t kMinAuditTrials = 10000;

struct AuditConfig {
  double epsilon = 1.0;
  double delta = 0.0;
  std::int64_t trials = kMinAuditTrials;
  // Family-wise level of the confidence slack, split across events.
  double confidence = 1e-3;
  // Minimum count on both sides for an output to enter the log-ratio.
  std::int64_t min_count = 30;
  int threads = 1;
};

// A violated event: Pr[A(a) in E] > e^eps Pr[A(b) in E] + delta even after
// the confidence slack (lower bound on the left, upper bound on the right).
struct EventViolation {
  int neighbor = 0;
  bool base_on_left = true;
  std::vector<std::string> event;
  double p_left = 0.0;
  double p_right = 0.0;
  double p_left_lower = 0.0;
  double p_right_upper = 0.0;
};

struct AuditReport {
  std::string mechanism;
  std::int64_t trials = 0;
  FrequencyTable base;
  std::vector<FrequencyTable> neighbors;
  // Largest |ln(p / p')| over outputs seen at least min_count times on both
  // sides; +inf when an output clears min_count on one side only.
  double max_log_ratio = 0.0;
  std::int64_t events_checked = 0;
  std::vector<EventViolation> violations;

  bool passed() const { return violations.empty(); }
};

// Runs the mechanism `trials` times on `s` and on every neighbor and checks
// singleton events and prefix unions of outputs sorted by decreasing
// empirical ratio, in both directions. Trial i on dataset k uses
// rng.Split(k).Split(i), with k = 0 for `s`.
// Fewer than kMinAuditTrials trials give ResourceExhausted.
absl::StatusOr<AuditReport> DpRatioAudit(const LabeledMechanism& mechanism,
                                         absl::string_view name,
                                         const Dataset& s,
                                         std::span<const Dataset> neighbors,
                                         const AuditConfig& cfg,
                                         const Rng& rng);

// Reference mechanism for calibrating the audit: releases the first
// coordinate of the first record, flipped with probability 1/(1 + e^eps).
LabeledMechanism RandomizedResponse(double epsilon);

}  // namespace oracle_dp

#endif  // ORACLE_DP_AUDIT_DP_AUDIT_H_
