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

#ifndef ORACLE_DP_CORE_QUERY_H_
#define ORACLE_DP_CORE_QUERY_H_

#include <compare>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/statusor.h"
#include "oracle_dp/core/data_point.h"

namespace oracle_dp {

enum class Family {
  kConjunction = 0,
  kDisjunction = 1,
  kParity = 2,
  kHalfspace = 3,
  kDecisionList = 4,
};

absl::string_view FamilyName(Family family);
absl::StatusOr<Family> ParseFamily(absl::string_view name);

// One branch of a 1-decision list: if x[index] == 1, output `output`.
struct DecisionRule {
  int index = 0;
  int output = 0;

  friend bool operator==(const DecisionRule&, const DecisionRule&) = default;
  friend auto operator<=>(const DecisionRule&, const DecisionRule&) = default;
};

// A boolean statistical query q: X -> {0,1}.
//
// Queries are values. The canonical order (loss flag, family, payload,
// negation) is total and is the tie-breaking order used by every oracle;
// `Encode()` renders the same fields as text. A loss query lifts a
// hypothesis h over d attributes to labelled points in d+1 coordinates,
// q_h((x, y)) = 1[h(x) != y], with the label stored last.
class Query {
 public:
  // Empty index sets follow the algebraic conventions: the empty
  // conjunction is constant 1, the empty disjunction and parity constant 0.
  static absl::StatusOr<Query> Conjunction(int dim, std::vector<int> indices);
  static absl::StatusOr<Query> Disjunction(int dim, std::vector<int> indices);
  static absl::StatusOr<Query> Parity(int dim, std::vector<int> indices);
  // q_w(x) = 1{w . x >= 1}.
  static absl::StatusOr<Query> Halfspace(std::vector<double> weights);
  static absl::StatusOr<Query> DecisionList(int dim,
                                            std::vector<DecisionRule> rules,
                                            int default_bit);

  Family family() const { return family_; }
  // Dimension of the hypothesis input (excluding any label coordinate).
  int dim() const { return dim_; }
  // Dimension of the points this query is evaluated on.
  int domain_dim() const { return loss_lift_ ? dim_ + 1 : dim_; }
  bool negated() const { return negated_; }
  bool loss_lift() const { return loss_lift_; }
  const std::vector<int>& indices() const { return indices_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<DecisionRule>& rules() const { return rules_; }
  int default_bit() const { return default_bit_; }

  // Returns 1 - q.
  Query Negated() const;
  // Returns the loss query q_h for this hypothesis.
  Query LossLifted() const;
  // Strips the negation flag.
  Query Base() const;

  // Unchecked evaluation; `x.dim()` must equal `domain_dim()`.
  int Evaluate(const DataPoint& x) const;

  std::string Encode() const;

  friend bool operator==(const Query&, const Query&) = default;
  friend std::strong_ordering operator<=>(const Query& a, const Query& b);

 private:
  Query() = default;
  int EvaluateHypothesis(const DataPoint& x) const;

  Family family_ = Family::kConjunction;
  int dim_ = 0;
  std::vector<int> indices_;
  std::vector<double> weights_;
  std::vector<DecisionRule> rules_;
  int default_bit_ = 0;
  bool negated_ = false;
  bool loss_lift_ = false;
};

// Inverse of Query::Encode().
absl::StatusOr<Query> ParseQuery(absl::string_view encoding, int dim);

// q(x) with a dimension check.
absl::StatusOr<int> EvalQuery(const Query& q, const DataPoint& x);

// q(S) = (1/n) sum_i q(S_i).
absl::StatusOr<double> EvalOnDataset(const Query& q, const Dataset& s);
double EvalOnPoints(const Query& q, std::span<const DataPoint> points);

// sum_i w_i q(x_i), un-normalized.
double EvalWeighted(const Query& q, const WeightedDataset& wd);

}  // namespace oracle_dp

#endif  // ORACLE_DP_CORE_QUERY_H_
