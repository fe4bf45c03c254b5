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

#ifndef ORACLE_DP_CORE_QUERY_CLASS_H_
#define ORACLE_DP_CORE_QUERY_CLASS_H_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "oracle_dp/core/data_point.h"
#include "oracle_dp/core/query.h"

namespace oracle_dp {

inline constexpr int kMaxEnumerableDim = 24;
inline constexpr std::size_t kDefaultEnumerationCap = std::size_t{1} << 20;

struct ClassSpec {
  Family family = Family::kConjunction;
  int dim = 0;
  // Halfspaces only: the finite weight grid V.
  std::vector<double> weight_grid;
  // Halfspaces only: the coordinate grid B of the universe. Left empty, it
  // defaults to V together with 0 and the separator thresholds of V.
  std::vector<double> domain_grid;
  // Lift hypotheses to loss queries over labelled points.
  bool loss_lift = false;
};

// A query class Q together with its data universe X.
//
// Members are materialized once, in canonical order, when |Q| is within the
// enumeration cap; copies share that storage. Immutable after Create().
class QueryClass {
 public:
  static absl::StatusOr<QueryClass> Create(
      ClassSpec spec, std::size_t enumeration_cap = kDefaultEnumerationCap);

  const ClassSpec& spec() const { return spec_; }
  Family family() const { return spec_.family; }
  int dim() const { return spec_.dim; }
  // Dimension of universe points: dim, plus one label coordinate when lifted.
  int domain_dim() const { return spec_.loss_lift ? spec_.dim + 1 : spec_.dim; }

  bool enumerable() const { return members_ != nullptr; }
  // All members in canonical order; capacity error when not enumerable.
  absl::StatusOr<std::span<const Query>> Members() const;
  // Natural log of |Q| (exact when enumerable, syntactic bound otherwise).
  double log_size() const { return log_size_; }

  // The values a universe coordinate may take (label coordinate excluded).
  const std::vector<double>& coordinate_values() const { return coords_; }
  double log_universe_size() const;
  // Enumerates X in lexicographic order.
  absl::StatusOr<std::span<const DataPoint>> Universe() const;
  bool Contains(const DataPoint& x) const;

  // Lexicographically-first member; defined even when not enumerable.
  Query FirstMember() const;

  std::string Describe() const;

 private:
  QueryClass() = default;

  ClassSpec spec_;
  std::vector<double> coords_;
  double log_size_ = 0.0;
  std::shared_ptr<const std::vector<Query>> members_;
  std::shared_ptr<const std::vector<DataPoint>> universe_;
};

// Returns the class {q_h((x, y)) = 1[h(x) != y] : h in hyp_class}.
absl::StatusOr<QueryClass> LiftToLossClass(const QueryClass& hyp_class);

// Builds a boolean class from a family tag and dimension.
absl::StatusOr<QueryClass> MakeBooleanClass(Family family, int dim,
                                            bool loss_lift = false);

}  // namespace oracle_dp

#endif  // ORACLE_DP_CORE_QUERY_CLASS_H_
