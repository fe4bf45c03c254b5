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

#include "oracle_dp/mechanisms/rspm.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"

namespace oracle_dp {
namespace {

absl::Status CheckInput(const RspmInput& input, const SeparatorSet& separator) {
  if (separator.elements.empty()) {
    return absl::InvalidArgumentError("separator set is empty");
  }
  const int dim = separator.elements.front().dim();
  for (const DataPoint& e : separator.elements) {
    if (e.dim() != dim) {
      return absl::InvalidArgumentError("separator elements differ in dimension");
    }
  }
  for (const WeightedEntry& r : input.records) {
    if (r.point.dim() != dim) {
      return absl::InvalidArgumentError(absl::StrCat(
          "record of dimension ", r.point.dim(), ", separator dimension ", dim));
    }
    if (!(std::abs(r.weight) <= 1.0)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "private record weight ", r.weight, " exceeds 1 in magnitude"));
    }
  }
  for (const WeightedEntry& p : input.public_points) {
    if (p.point.dim() != dim || !std::isfinite(p.weight)) {
      return absl::InvalidArgumentError("malformed public point");
    }
  }
  return absl::OkStatus();
}

}  // namespace

RspmInput RspmInput::FromDataset(const Dataset& s) {
  return RspmInput{UniformlyWeighted(s.points(), 1.0), {}};
}

absl::StatusOr<MechanismOutput> RspmWithNoise(const RspmInput& input,
                                              const SeparatorSet& separator,
                                              std::span<const double> eta,
                                              WeightedOracle& oracle) {
  if (absl::Status s = CheckInput(input, separator); !s.ok()) return s;
  if (eta.size() != separator.elements.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "noise vector has ", eta.size(), " entries, separator has ",
        separator.elements.size()));
  }
  WeightedDataset wd;
  wd.reserve(input.records.size() + input.public_points.size() + eta.size());
  wd.insert(wd.end(), input.records.begin(), input.records.end());
  wd.insert(wd.end(), input.public_points.begin(), input.public_points.end());
  for (std::size_t i = 0; i < eta.size(); ++i) {
    wd.push_back({separator.elements[i], eta[i]});
  }
  absl::StatusOr<OracleAnswer> answer = oracle.Solve(wd);
  if (!answer.ok()) return answer.status();
  MechanismOutput out;
  out.query = answer->query;
  out.noise_trace.assign(eta.begin(), eta.end());
  out.oracle_calls = 1;
  return out;
}

absl::StatusOr<MechanismOutput> Rspm(const RspmInput& input,
                                     const SeparatorSet& separator,
                                     double epsilon, WeightedOracle& oracle,
                                     Rng& rng) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  const double scale = separator.size() / epsilon;
  std::vector<double> eta(separator.elements.size());
  for (double& e : eta) e = rng.Laplace(scale);
  return RspmWithNoise(input, separator, eta, oracle);
}

double GaussianRspmSigma(int m, double epsilon, double delta) {
  return 3.5 * std::sqrt(m * std::log(1.0 / delta)) / epsilon;
}

absl::StatusOr<MechanismOutput> RspmGaussian(const RspmInput& input,
                                             const SeparatorSet& separator,
                                             double epsilon, double delta,
                                             WeightedOracle& oracle, Rng& rng) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  if (!(delta > 0.0 && delta < std::exp(-1.0))) {
    return absl::InvalidArgumentError(
        absl::StrCat("Gaussian variant needs delta in (0, 1/e), got ", delta));
  }
  const double sigma = GaussianRspmSigma(separator.size(), epsilon, delta);
  std::vector<double> eta(separator.elements.size());
  for (double& e : eta) e = rng.Gaussian(sigma);
  return RspmWithNoise(input, separator, eta, oracle);
}

absl::StatusOr<Query> ExponentialMechanism(const Dataset& s,
                                           const QueryClass& query_class,
                                           double epsilon, Rng& rng) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError("epsilon must be non-negative");
  }
  absl::StatusOr<std::span<const Query>> members = query_class.Members();
  if (!members.ok()) return members.status();
  if (s.dim() != query_class.domain_dim()) {
    return absl::InvalidArgumentError("dataset dimension does not match class");
  }
  std::vector<double> log_w(members->size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < members->size(); ++k) {
    double count = 0.0;
    for (const DataPoint& x : s.points()) count += (*members)[k].Evaluate(x);
    log_w[k] = -0.5 * epsilon * count;
    top = std::max(top, log_w[k]);
  }
  double total = 0.0;
  for (double& w : log_w) {
    w = std::exp(w - top);
    total += w;
  }
  double u = rng.Uniform() * total;
  for (std::size_t k = 0; k < log_w.size(); ++k) {
    u -= log_w[k];
    if (u < 0.0) return (*members)[k];
  }
  return members->back();
}

absl::StatusOr<double> ExcessError(const Query& q, const Dataset& s,
                                   const QueryClass& query_class) {
  absl::StatusOr<std::span<const Query>> members = query_class.Members();
  if (!members.ok()) return members.status();
  absl::StatusOr<double> value = EvalOnDataset(q, s);
  if (!value.ok()) return value.status();
  double best = 1.0;
  for (const Query& other : *members) {
    best = std::min(best, EvalOnPoints(other, s.points()));
  }
  return *value - best;
}

double RspmAccuracyBound(int m, int n, double epsilon, double beta) {
  return 2.0 * m * m * std::log(m / beta) / (epsilon * n);
}

double RspmExpectedErrorBound(int m, int n, double epsilon) {
  return 2.0 * m * m * (1.0 + std::log(static_cast<double>(m))) / (epsilon * n);
}

double GaussianRspmAccuracyBound(int m, int n, double epsilon, double delta,
                                 double beta) {
  return std::sqrt(2.0 * std::log(2.0 * m / beta)) *
         GaussianRspmSigma(m, epsilon, delta) * m / n;
}

}  // namespace oracle_dp
