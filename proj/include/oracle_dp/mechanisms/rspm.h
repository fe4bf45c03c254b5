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

#ifndef ORACLE_DP_MECHANISMS_RSPM_H_
#define ORACLE_DP_MECHANISMS_RSPM_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "oracle_dp/core/data_point.h"
#include "oracle_dp/core/query.h"
#include "oracle_dp/core/query_class.h"
#include "oracle_dp/core/rng.h"
#include "oracle_dp/core/separator.h"
#include "oracle_dp/oracles/oracle.h"

namespace oracle_dp {

// Input of a separator-perturbed minimization. Private records carry weights
// of magnitude at most 1 (a plain dataset uses weight 1 per record); public
// points are data-independent and may carry any finite weight.
struct RspmInput {
  WeightedDataset records;
  WeightedDataset public_points;

  static RspmInput FromDataset(const Dataset& s);
};

struct MechanismOutput {
  // nullopt when the oracle failed.
  std::optional<Query> query;
  // The realized separator weights, one per separator element.
  std::vector<double> noise_trace;
  std::int64_t oracle_calls = 0;

  bool failed() const { return !query.has_value(); }
};

// Builds WD = records + public points + {(e_i, eta_i)} and makes one oracle
// call. `eta` supplies the separator weights directly.
absl::StatusOr<MechanismOutput> RspmWithNoise(const RspmInput& input,
                                              const SeparatorSet& separator,
                                              std::span<const double> eta,
                                              WeightedOracle& oracle);

// Laplace variant: eta_i ~ Lap(m / epsilon).
absl::StatusOr<MechanismOutput> Rspm(const RspmInput& input,
                                     const SeparatorSet& separator,
                                     double epsilon, WeightedOracle& oracle,
                                     Rng& rng);

// sigma = 3.5 sqrt(m ln(1/delta)) / epsilon.
double GaussianRspmSigma(int m, double epsilon, double delta);

// Gaussian variant: eta_i ~ N(0, sigma^2); delta must lie in (0, 1/e).
absl::StatusOr<MechanismOutput> RspmGaussian(const RspmInput& input,
                                             const SeparatorSet& separator,
                                             double epsilon, double delta,
                                             WeightedOracle& oracle, Rng& rng);

// Samples q with probability proportional to exp(-epsilon n q(S) / 2).
absl::StatusOr<Query> ExponentialMechanism(const Dataset& s,
                                           const QueryClass& query_class,
                                           double epsilon, Rng& rng);

// q(S) - min over the class of q'(S).
absl::StatusOr<double> ExcessError(const Query& q, const Dataset& s,
                                   const QueryClass& query_class);

// High-probability excess-error bound of the Laplace variant:
// 2 m^2 ln(m / beta) / (epsilon n).
double RspmAccuracyBound(int m, int n, double epsilon, double beta);
// Expected excess-error bound: 2 m^2 (1 + ln m) / (epsilon n).
double RspmExpectedErrorBound(int m, int n, double epsilon);
// Tail bound of the Gaussian variant: sqrt(2 ln(2m / beta)) sigma m / n.
double GaussianRspmAccuracyBound(int m, int n, double epsilon, double delta,
                                 double beta);

}  // namespace oracle_dp

#endif  // ORACLE_DP_MECHANISMS_RSPM_H_
