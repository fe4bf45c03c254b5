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

#include "oracle_dp/synthgen/ftpl.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace oracle_dp {

double DefaultFtplNoiseScale(int m2, double log_universe, std::int64_t rounds) {
  return std::sqrt(static_cast<double>(rounds) / (m2 * log_universe));
}

void ContextFtpl::Observe(const Query& q) {
  ++history_[q.Negated()];
  ++observed_;
}

absl::StatusOr<DataPoint> ContextFtpl::Draw(Rng& rng) {
  std::vector<double> eta(separator_.size());
  for (double& e : eta) e = rng.Laplace(noise_scale_);
  return DrawWithNoise(eta);
}

absl::StatusOr<DataPoint> ContextFtpl::DrawWithNoise(
    std::span<const double> eta) {
  if (eta.size() != separator_.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "expected ", separator_.size(), " perturbations, got ", eta.size()));
  }
  WeightedQuerySet wq;
  wq.reserve(history_.size() + separator_.size());
  for (const auto& [q, count] : history_) {
    wq.push_back({q, static_cast<double>(count)});
  }
  for (std::size_t s = 0; s < separator_.size(); ++s) {
    wq.push_back({separator_[s], eta[s]});
  }
  absl::StatusOr<std::optional<DataPoint>> x = oracle_->Solve(wq);
  if (!x.ok()) return x.status();
  if (!x->has_value()) {
    return absl::AbortedError("dual oracle failed");
  }
  return **x;
}

double ContextFtpl::CumulativeLoss(const DataPoint& x) const {
  double total = 0.0;
  for (const auto& [q, count] : history_) total += count * q.Evaluate(x);
  return total;
}

}  // namespace oracle_dp
