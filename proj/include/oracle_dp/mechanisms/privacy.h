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

#ifndef ORACLE_DP_MECHANISMS_PRIVACY_H_
#define ORACLE_DP_MECHANISMS_PRIVACY_H_

#include <cstdint>
#include <span>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace oracle_dp {

struct PrivacyParams {
  double epsilon = 1.0;
  double delta = 0.0;
};

// epsilon > 0 and finite, 0 <= delta < 1.
absl::Status ValidatePrivacy(const PrivacyParams& p);

// Coordinatewise sum.
PrivacyParams ComposeBasic(std::span<const PrivacyParams> parts);

struct RoundBudget {
  double epsilon0 = 0.0;
  double delta0 = 0.0;
};

// Per-round budget for T adaptive rounds:
//   epsilon0 = epsilon / sqrt(24 T ln(2 / delta)),  delta0 = delta / (4T).
absl::StatusOr<RoundBudget> AdvancedBudget(double epsilon, double delta,
                                           std::int64_t rounds);

}  // namespace oracle_dp

#endif  // ORACLE_DP_MECHANISMS_PRIVACY_H_
