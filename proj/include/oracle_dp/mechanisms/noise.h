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

#ifndef ORACLE_DP_MECHANISMS_NOISE_H_
#define ORACLE_DP_MECHANISMS_NOISE_H_

#include <cstddef>
#include <span>

#include "absl/status/statusor.h"
#include "oracle_dp/core/rng.h"

namespace oracle_dp {

// One Lap(scale) draw; scale must be positive and finite.
absl::StatusOr<double> LaplaceSample(double scale, Rng& rng);
// One N(0, sigma^2) draw; sigma must be positive and finite.
absl::StatusOr<double> GaussianSample(double sigma, Rng& rng);

// Adds independent Lap(scale) noise to each value and returns the index of
// the largest noisy value, the first one on ties. A zero scale returns the
// plain argmax.
absl::StatusOr<std::size_t> ReportNoisyMax(std::span<const double> values,
                                           double scale, Rng& rng);

}  // namespace oracle_dp

#endif  // ORACLE_DP_MECHANISMS_NOISE_H_
