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

#include "oracle_dp/audit/error_table.h"

#include <algorithm>
#include <cmath>
#include <optional>

#include "absl/strings/str_cat.h"
#include "oracle_dp/core/parallel.h"
#include "oracle_dp/core/separator.h"
#include "oracle_dp/mechanisms/rspm.h"
#include "oracle_dp/oracles/oracle.h"
#include "oracle_dp/prsma/prsma.h"

namespace oracle_dp {

Dataset RandomProductDataset(int dim, int n, Rng& rng) {
  std::vector<double> bias(dim);
  for (double& b : bias) b = rng.Uniform();
  std::vector<DataPoint> points;
  points.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::vector<double> v(dim);
    for (int j = 0; j < dim; ++j) v[j] = rng.Bernoulli(bias[j]) ? 1.0 : 0.0;
    points.emplace_back(std::move(v));
  }
  return *Dataset::Create(std::move(points));
}

absl::StatusOr<LearnPreset> ParseLearnPreset(absl::string_view name) {
  for (LearnPreset p :
       {LearnPreset::kRspm, LearnPreset::kRspmGaussian, LearnPreset::kPrsma}) {
    if (name == LearnPresetName(p)) return p;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown mechanism '", name, "'"));
}

absl::string_view LearnPresetName(LearnPreset preset) {
  switch (preset) {
    case LearnPreset::kRspm:
      return "rspm";
    case LearnPreset::kRspmGaussian:
      return "rspm_gaussian";
    case LearnPreset::kPrsma:
      return "prsma";
  }
  return "?";
}

double PresetBound(LearnPreset preset, const QueryClass& query_class, int m,
                   int n, double epsilon, const ErrorTableConfig& cfg) {
  switch (preset) {
    case LearnPreset::kRspm:
      return RspmAccuracyBound(m, n, epsilon, cfg.beta);
    case LearnPreset::kRspmGaussian:
      return GaussianRspmAccuracyBound(m, n, epsilon, cfg.delta, cfg.beta);
    case LearnPreset::kPrsma:
      return PrsmaRspmAccuracyBound(m, query_class.log_size(), n, epsilon,
                                    cfg.delta, cfg.beta);
  }
  return 0.0;
}

absl::StatusOr<std::vector<ErrorRow>> ErrorTable(LearnPreset preset,
                                                 const QueryClass& query_class,
                                                 const ErrorTableConfig& cfg,
                                                 const Rng& rng) {
  if (cfg.trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  absl::StatusOr<SeparatorSet> separator = BuildSeparatorSet(query_class);
  if (!separator.ok()) return separator.status();
  std::vector<ErrorRow> rows;
  std::uint64_t row_index = 0;
  for (int n : cfg.n_grid) {
    for (double epsilon : cfg.epsilon_grid) {
      if (n < 1 || !(epsilon > 0)) {
        return absl::InvalidArgumentError("grid needs n >= 1 and epsilon > 0");
      }
      const Rng row_rng = rng.Split(row_index++);
      std::vector<std::optional<double>> excess(cfg.trials);
      absl::Status status = ParallelFor(
          cfg.trials, cfg.threads, [&](std::int64_t i) -> absl::Status {
            Rng trial_rng = row_rng.Split(i);
            Rng data_rng = trial_rng.Split(0);
            Rng mech_rng = trial_rng.Split(1);
            Dataset s =
                RandomProductDataset(query_class.domain_dim(), n, data_rng);
            ExactOracle oracle(query_class);
            std::optional<Query> q;
            if (preset == LearnPreset::kPrsma) {
              absl::StatusOr<PrsmaOutcome> out = PrsmaRspm(
                  s, *separator,
                  {epsilon, cfg.delta, /*raw=*/false, kDefaultRepsCap}, oracle,
                  mech_rng);
              if (!out.ok()) return out.status();
              q = out->result;
            } else {
              RspmInput input = RspmInput::FromDataset(s);
              absl::StatusOr<MechanismOutput> out =
                  preset == LearnPreset::kRspm
                      ? Rspm(input, *separator, epsilon, oracle, mech_rng)
                      : RspmGaussian(input, *separator, epsilon, cfg.delta,
                                     oracle, mech_rng);
              if (!out.ok()) return out.status();
              q = out->query;
            }
            if (!q.has_value()) return absl::OkStatus();
            absl::StatusOr<double> e = ExcessError(*q, s, query_class);
            if (!e.ok()) return e.status();
            excess[i] = *e;
            return absl::OkStatus();
          });
      if (!status.ok()) return status;
      ErrorRow row;
      row.n = n;
      row.epsilon = epsilon;
      row.bound = PresetBound(preset, query_class, separator->size(), n,
                              epsilon, cfg);
      std::vector<double> values;
      for (const std::optional<double>& e : excess) {
        if (e.has_value()) {
          values.push_back(*e);
        } else {
          ++row.failures;
        }
      }
      if (!values.empty()) {
        std::sort(values.begin(), values.end());
        double sum = 0.0;
        for (double v : values) sum += v;
        row.mean_excess = sum / values.size();
        const std::size_t k = static_cast<std::size_t>(
            std::ceil(0.95 * values.size()));
        row.p95_excess = values[std::max<std::size_t>(k, 1) - 1];
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace oracle_dp
