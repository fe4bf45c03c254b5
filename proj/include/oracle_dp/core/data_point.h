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

#ifndef ORACLE_DP_CORE_DATA_POINT_H_
#define ORACLE_DP_CORE_DATA_POINT_H_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace oracle_dp {

// A point of the data universe. Boolean universes store 0.0/1.0; halfspace
// universes store values from a finite grid in [-1, 1].
class DataPoint {
 public:
  DataPoint() = default;
  explicit DataPoint(std::vector<double> values) : values_(std::move(values)) {}
  DataPoint(std::initializer_list<double> values) : values_(values) {}

  // Builds a boolean point from the low `dim` bits of `mask`, coordinate 0
  // being the most significant bit so that mask order is lexicographic order.
  static DataPoint FromMask(unsigned long long mask, int dim);

  int dim() const { return static_cast<int>(values_.size()); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  // Appends a coordinate; used to attach labels for loss classes.
  DataPoint WithAppended(double value) const;

  std::string ToString() const;

  friend bool operator==(const DataPoint&, const DataPoint&) = default;
  friend auto operator<=>(const DataPoint& a, const DataPoint& b) {
    return a.values_ <=> b.values_;
  }

 private:
  std::vector<double> values_;
};

// An unweighted dataset S with n >= 1 points of one dimension.
class Dataset {
 public:
  static absl::StatusOr<Dataset> Create(std::vector<DataPoint> points);

  int size() const { return static_cast<int>(points_.size()); }
  int dim() const { return points_.front().dim(); }
  const std::vector<DataPoint>& points() const { return points_; }
  const DataPoint& operator[](std::size_t i) const { return points_[i]; }

 private:
  explicit Dataset(std::vector<DataPoint> points) : points_(std::move(points)) {}
  std::vector<DataPoint> points_;
};

struct WeightedEntry {
  DataPoint point;
  double weight = 0.0;
};

// The oracle input format: a list of (universe element, real weight) pairs.
using WeightedDataset = std::vector<WeightedEntry>;

// Checks finite weights and a common dimension.
absl::Status ValidateWeightedDataset(const WeightedDataset& wd);

// Returns {(x_i, weight)} for every point of `points`.
WeightedDataset UniformlyWeighted(std::span<const DataPoint> points,
                                  double weight);

// Negation-doubling: appends the complement of each of the d boolean
// coordinates, so monotone classes over 2d coordinates express literals
// with negations.
// Merges entries with equal points by summing their weights; the result is
// sorted by point. Every query's weighted objective is unchanged up to float
// reassociation.
WeightedDataset Aggregated(const WeightedDataset& wd);

DataPoint NegationDoubled(const DataPoint& point);
absl::StatusOr<Dataset> NegationDoubled(const Dataset& dataset);

}  // namespace oracle_dp

#endif  // ORACLE_DP_CORE_DATA_POINT_H_
