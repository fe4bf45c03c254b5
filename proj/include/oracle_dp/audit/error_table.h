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

#ifndef ORACLE_DP_AUDIT_ERROR_TABLE_H_
#define ORACLE_DP_AUDIT_ERROR_TABLE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "oracle_dp/core/data_point.h"
#include "oracle_dp/core/query_class.h"
#include "oracle_dp/core/rng.h"

namespace oracle_dp {

// n binary points with independent coordinates; each coordinate's bias is
// drawn uniformly from [0, 1] first.
Dataset RandomProductDataset(int dim, int n, Rng& rng);

enum class LearnPreset { kRspm, kRspmGaussian, kPrsma };
absl::StatusOr<LearnPreset> ParseLearnPreset(absl::string_view name);
absl::string_view LearnPresetName(LearnPreset preset);

struct ErrorTableConfig {
  std::vector<int> n_grid = {500, 1000};
  std::vector<double> epsilon_grid = {1.0};
  std::int64_t trials = 200;
  double beta = 0.05;
  // Used by the Gaussian and PRSMA presets.
  double delta = 0.05;
  int threads = 1;
};

struct ErrorRow {
  int n = 0;
  double epsilon = 0.0;
  double mean_excess = 0.0;
  double p95_excess = 0.0;
  double bound = 0.0;
  // Trials that ended in Fail; excess statistics cover the others.
  std::int64_t failures = 0;
};

// Theoretical excess-error bound of the preset at (n, epsilon).
double PresetBound(LearnPreset preset, const QueryClass& query_class, int m,
                   int n, double epsilon, const ErrorTableConfig& cfg);

// One row per (n, epsilon) in grid order. Trial i of row r draws its
// dataset and mechanism noise from rng.Split(r).Split(i).
absl::StatusOr<std::vector<ErrorRow>> ErrorTable(LearnPreset preset,
                                                 const QueryClass& query_class,
                                                 const ErrorTableConfig& cfg,
                                                 const Rng& rng);

}  // namespace oracle_dp

#endif  // ORACLE_DP_AUDIT_ERROR_TABLE_H_
