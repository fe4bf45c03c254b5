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

#include "oracle_dp/mechanisms/noise.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace oracle_dp {

absl::StatusOr<double> LaplaceSample(double scale, Rng& rng) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale must be positive, got ", scale));
  }
  return rng.Laplace(scale);
}

absl::StatusOr<double> GaussianSample(double sigma, Rng& rng) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Gaussian sigma must be positive, got ", sigma));
  }
  return rng.Gaussian(sigma);
}

absl::StatusOr<std::size_t> ReportNoisyMax(std::span<const double> values,
                                           double scale, Rng& rng) {
  if (values.empty()) {
    return absl::InvalidArgumentError("report-noisy-max needs a candidate");
  }
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrCat("noise scale must be non-negative, got ", scale));
  }
  std::size_t best = 0;
  double best_value = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double noisy = values[i] + (scale > 0.0 ? rng.Laplace(scale) : 0.0);
    if (i == 0 || noisy > best_value) {
      best = i;
      best_value = noisy;
    }
  }
  return best;
}

}  // namespace oracle_dp
