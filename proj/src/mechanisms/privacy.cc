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

#include "oracle_dp/mechanisms/privacy.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace oracle_dp {

absl::Status ValidatePrivacy(const PrivacyParams& p) {
  if (!(p.epsilon > 0.0) || !std::isfinite(p.epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive, got ", p.epsilon));
  }
  if (!(p.delta >= 0.0 && p.delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in [0, 1), got ", p.delta));
  }
  return absl::OkStatus();
}

PrivacyParams ComposeBasic(std::span<const PrivacyParams> parts) {
  PrivacyParams total{0.0, 0.0};
  for (const PrivacyParams& p : parts) {
    total.epsilon += p.epsilon;
    total.delta += p.delta;
  }
  return total;
}

absl::StatusOr<RoundBudget> AdvancedBudget(double epsilon, double delta,
                                           std::int64_t rounds) {
  if (rounds < 1) return absl::InvalidArgumentError("T must be >= 1");
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  if (!(delta > 0.0 && delta < 2.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 2) so ln(2/delta) > 0, got ", delta));
  }
  const double t = static_cast<double>(rounds);
  return RoundBudget{epsilon / std::sqrt(24.0 * t * std::log(2.0 / delta)),
                     delta / (4.0 * t)};
}

}  // namespace oracle_dp
