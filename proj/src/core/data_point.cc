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

#include "oracle_dp/core/data_point.h"

#include <cmath>
#include <map>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace oracle_dp {

DataPoint DataPoint::FromMask(unsigned long long mask, int dim) {
  std::vector<double> values(dim);
  for (int j = 0; j < dim; ++j) {
    values[j] = static_cast<double>((mask >> (dim - 1 - j)) & 1ULL);
  }
  return DataPoint(std::move(values));
}

DataPoint DataPoint::WithAppended(double value) const {
  std::vector<double> values = values_;
  values.push_back(value);
  return DataPoint(std::move(values));
}

std::string DataPoint::ToString() const {
  return absl::StrCat("(", absl::StrJoin(values_, ","), ")");
}

absl::StatusOr<Dataset> Dataset::Create(std::vector<DataPoint> points) {
  if (points.empty()) {
    return absl::InvalidArgumentError("dataset must contain at least one point");
  }
  const int dim = points.front().dim();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].dim() != dim) {
      return absl::InvalidArgumentError(
          absl::StrCat("point ", i, " has dimension ", points[i].dim(),
                       ", expected ", dim));
    }
  }
  return Dataset(std::move(points));
}

absl::Status ValidateWeightedDataset(const WeightedDataset& wd) {
  if (wd.empty()) return absl::OkStatus();
  const int dim = wd.front().point.dim();
  for (std::size_t i = 0; i < wd.size(); ++i) {
    if (!std::isfinite(wd[i].weight)) {
      return absl::InvalidArgumentError(
          absl::StrCat("weight of entry ", i, " is not finite"));
    }
    if (wd[i].point.dim() != dim) {
      return absl::InvalidArgumentError(
          absl::StrCat("entry ", i, " has dimension ", wd[i].point.dim(),
                       ", expected ", dim));
    }
  }
  return absl::OkStatus();
}

WeightedDataset UniformlyWeighted(std::span<const DataPoint> points,
                                  double weight) {
  WeightedDataset wd;
  wd.reserve(points.size());
  for (const DataPoint& p : points) wd.push_back({p, weight});
  return wd;
}

DataPoint NegationDoubled(const DataPoint& point) {
  std::vector<double> values(point.values().begin(), point.values().end());
  for (int j = 0; j < point.dim(); ++j) values.push_back(1.0 - point[j]);
  return DataPoint(std::move(values));
}

absl::StatusOr<Dataset> NegationDoubled(const Dataset& dataset) {
  std::vector<DataPoint> points;
  points.reserve(dataset.size());
  for (const DataPoint& p : dataset.points()) {
    points.push_back(NegationDoubled(p));
  }
  return Dataset::Create(std::move(points));
}

WeightedDataset Aggregated(const WeightedDataset& wd) {
  std::map<DataPoint, double> sums;
  for (const WeightedEntry& e : wd) sums[e.point] += e.weight;
  WeightedDataset out;
  out.reserve(sums.size());
  for (auto& [point, weight] : sums) out.push_back({point, weight});
  return out;
}

}  // namespace oracle_dp
