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

#ifndef ORACLE_DP_SYNTHGEN_ORACLE_QUERY_H_
#define ORACLE_DP_SYNTHGEN_ORACLE_QUERY_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "oracle_dp/core/data_point.h"
#include "oracle_dp/core/query.h"
#include "oracle_dp/core/query_class.h"
#include "oracle_dp/core/rng.h"
#include "oracle_dp/core/separator.h"
#include "oracle_dp/mechanisms/privacy.h"
#include "oracle_dp/oracles/dual_oracle.h"
#include "oracle_dp/oracles/oracle.h"
#include "oracle_dp/prsma/prsma.h"
#include "oracle_dp/synthgen/ftpl.h"

namespace oracle_dp {

// A weighted minimizer over Q used by the query player. `private_part`
// holds the dataset records (weights +-1/n), `public_part` the sampled
// proxy points (weights -+1/N). Returns nullopt on Fail.
using PrivateMinimizer = std::function<absl::StatusOr<std::optional<Query>>(
    const WeightedDataset& private_part, const WeightedDataset& public_part,
    const RoundBudget& budget, Rng& rng)>;

// Non-private exact minimization of the combined objective.
PrivateMinimizer ExactMinimizer(QueryClass query_class);
// RSPM on the objective rescaled by n, so each record has weight +-1 and
// the proxy points -+n/N. Laplace at epsilon0, or Gaussian at
// (epsilon0, delta0).
PrivateMinimizer RspmMinimizer(SeparatorSet separator, WeightedOracle& oracle);
PrivateMinimizer GaussianRspmMinimizer(SeparatorSet separator,
                                       WeightedOracle& oracle);
// PRSMA around RSPM with targets (epsilon0, delta0); each part's objective is
// rescaled by the part size.
PrivateMinimizer PrsmaMinimizer(SeparatorSet separator, WeightedOracle& oracle,
                                std::int64_t reps_cap);

struct PbrConfig {
  RoundBudget budget;
  double alpha0 = 0.1;
  double beta0 = 0.1;
  // Report-noisy-max scale; defaults to 1/(epsilon0 n) when unset.
  std::optional<double> selection_scale;
};

struct PbrOutcome {
  std::optional<Query> query;  // nullopt on minimizer Fail
  std::optional<Query> candidate1;  // O(WD1)
  std::optional<Query> candidate2;  // negation of O(WD2)
  double payoff1 = 0.0;
  double payoff2 = 0.0;
  std::int64_t samples = 0;
};

// N = ceil(2 ln(2|Q| / beta0) / alpha0^2).
std::int64_t PbrSampleCount(double log_class_size, double alpha0, double beta0);

// Draws N points from the data player's distribution, privately minimizes
// q(S_hat) - q(S) and q(S) - q(S_hat) over Q (negating the second answer),
// and picks between the two by report-noisy-max on A(S_hat, .).
absl::StatusOr<PbrOutcome> PrivateBestResponse(
    const Dataset& s, const std::function<absl::StatusOr<DataPoint>(Rng&)>& sampler,
    double log_class_size, const PbrConfig& cfg,
    const PrivateMinimizer& minimizer, Rng& rng);

enum class Instantiation { kPrivateOracle, kGaussianRspm, kPrsma };
absl::StatusOr<Instantiation> ParseInstantiation(absl::string_view name);
absl::string_view InstantiationName(Instantiation inst);

struct ProblemSizes {
  int m1 = 1;  // primal separator size
  int m2 = 1;  // dual separator size
  double log_universe = 1.0;  // ln |X|
  double log_class = 1.0;     // ln |Q|
  int n = 1;
  double epsilon = 1.0;
  double delta = 1e-6;
  double beta = 0.1;
};

// Round count T recommended for each instantiation (all natural logs):
//   private oracle: n eps m2^{3/4} sqrt(ln|X|) / (ln(|Q|/beta) sqrt(ln(1/delta)))
//   Gaussian RSPM:  m2^{3/4} sqrt(ln|X|) n eps
//                   / (m1^{3/2} sqrt(ln(m1/beta)) ln(1/delta))
//   PRSMA:          (m2^{3/4} sqrt(ln|X| n eps) / (m1^2 + sqrt(ln|Q|)))^{4/3}
// each ceiled and at least 1.
std::int64_t PresetRounds(Instantiation inst, const ProblemSizes& sizes);

// Target accuracy of each instantiation with hidden constants set to one,
// used as alpha0 by the presets; clamped to (0, 1].
//   private oracle: (m2^{3/4} sqrt(ln|X| ln(1/delta)) ln(|Q|/beta) / (n eps))^{1/2}
//   Gaussian RSPM:  (m1^{3/2} m2^{3/4} sqrt(ln(m1/beta) ln|X|) ln(1/delta)
//                    / (n eps))^{1/2}
//   PRSMA:          m2^{1/4} ln^{1/6}|X| (m1^{4/3} + ln^{1/3}|Q|) / (n eps)^{1/3}
double PresetAlpha(Instantiation inst, const ProblemSizes& sizes);

struct OracleQueryConfig {
  std::int64_t rounds = 1;
  double epsilon = 1.0;
  double delta = 1e-4;
  double beta = 0.1;
  double alpha0 = 0.1;
  // Overrides DefaultFtplNoiseScale().
  std::optional<double> ftpl_noise_scale;
};

struct OracleQueryResult {
  // Set when a round failed; no synthetic data is released then.
  std::optional<std::int64_t> failed_round;
  std::vector<DataPoint> points;
  // Round tau_j each output point was drawn from.
  std::vector<std::int64_t> source_rounds;
  // q^0, q^1, ..., q^T.
  std::vector<Query> played;
  RoundBudget budget;
  double beta0 = 0.0;
  std::int64_t samples_per_round = 0;
  std::int64_t dual_oracle_calls = 0;

  bool failed() const { return failed_round.has_value(); }
};

// N_alpha0 = ceil(2 ln(8|Q| / beta) / alpha0^2).
std::int64_t SyntheticSampleCount(double log_class_size, double alpha0,
                                  double beta);

// Runs T rounds of CONTEXT-FTPL against private best responses, then
// releases N_alpha0 points, each from S^tau with tau uniform on [T].
absl::StatusOr<OracleQueryResult> OracleQuery(const Dataset& s,
                                              const QueryClass& query_class,
                                              const OracleQueryConfig& cfg,
                                              DualOracle& dual_oracle,
                                              const PrivateMinimizer& minimizer,
                                              const Rng& rng);

}  // namespace oracle_dp

#endif  // ORACLE_DP_SYNTHGEN_ORACLE_QUERY_H_
