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

#include "oracle_dp/audit/dp_audit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "absl/strings/str_cat.h"
#include "boost/math/special_functions/beta.hpp"
#include "oracle_dp/core/parallel.h"

namespace oracle_dp {
namespace {

absl::StatusOr<FrequencyTable> Tabulate(const LabeledMechanism& mechanism,
                                        const Dataset& s, std::int64_t trials,
                                        int threads, const Rng& stream) {
  std::vector<std::string> labels(trials);
  absl::Status status =
      ParallelFor(trials, threads, [&](std::int64_t i) -> absl::Status {
        Rng rng = stream.Split(i);
        absl::StatusOr<std::string> out = mechanism(s, rng);
        if (!out.ok()) return out.status();
        labels[i] = *std::move(out);
        return absl::OkStatus();
      });
  if (!status.ok()) return status;
  FrequencyTable table;
  for (std::string& l : labels) ++table[std::move(l)];
  return table;
}

std::int64_t CountOf(const FrequencyTable& t, const std::string& label) {
  auto it = t.find(label);
  return it == t.end() ? 0 : it->second;
}

std::vector<std::string> Support(const FrequencyTable& a,
                                 const FrequencyTable& b) {
  std::set<std::string> labels;
  for (const auto& [l, c] : a) labels.insert(l);
  for (const auto& [l, c] : b) labels.insert(l);
  return {labels.begin(), labels.end()};
}

// Singletons plus prefix unions under decreasing empirical ratio; the full
// support is left out since it has probability one on both sides.
std::vector<std::vector<std::string>> Events(const FrequencyTable& left,
                                             const FrequencyTable& right) {
  std::vector<std::string> support = Support(left, right);
  std::vector<std::vector<std::string>> events;
  for (const std::string& l : support) events.push_back({l});
  auto ratio = [&](const std::string& l) {
    const double r = static_cast<double>(CountOf(right, l));
    return r == 0 ? std::numeric_limits<double>::infinity()
                  : CountOf(left, l) / r;
  };
  std::stable_sort(support.begin(), support.end(),
                   [&](const std::string& a, const std::string& b) {
                     return ratio(a) > ratio(b);
                   });
  for (std::size_t k = 2; k < support.size(); ++k) {
    events.emplace_back(support.begin(), support.begin() + k);
  }
  return events;
}

}  // namespace

Distribution Normalized(const FrequencyTable& table) {
  double total = 0.0;
  for (const auto& [l, c] : table) total += c;
  Distribution d;
  if (total == 0) return d;
  for (const auto& [l, c] : table) d[l] = c / total;
  return d;
}

double TvDistance(const Distribution& a, const Distribution& b) {
  double sum = 0.0;
  for (const auto& [l, p] : a) {
    auto it = b.find(l);
    sum += std::abs(p - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [l, p] : b) {
    if (!a.contains(l)) sum += p;
  }
  return sum / 2;
}

ProportionInterval ClopperPearson(std::int64_t successes, std::int64_t trials,
                                  double alpha) {
  ProportionInterval out;
  if (trials <= 0) return out;
  const double k = static_cast<double>(successes);
  const double n = static_cast<double>(trials);
  if (successes > 0) {
    out.lower = boost::math::ibeta_inv(k, n - k + 1, alpha / 2);
  }
  if (successes < trials) {
    out.upper = boost::math::ibeta_inv(k + 1, n - k, 1 - alpha / 2);
  }
  return out;
}

std::vector<Dataset> SubstitutionNeighbors(const Dataset& s,
                                           std::span<const DataPoint> pool) {
  std::set<std::vector<DataPoint>> seen;
  std::vector<Dataset> out;
  const std::vector<DataPoint>& points = s.points();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (const DataPoint& x : pool) {
      if (x == points[i]) continue;
      std::vector<DataPoint> copy = points;
      copy[i] = x;
      if (!seen.insert(copy).second) continue;
      absl::StatusOr<Dataset> d = Dataset::Create(std::move(copy));
      if (d.ok()) out.push_back(*std::move(d));
    }
  }
  return out;
}

absl::StatusOr<AuditReport> DpRatioAudit(const LabeledMechanism& mechanism,
                                         absl::string_view name,
                                         const Dataset& s,
                                         std::span<const Dataset> neighbors,
                                         const AuditConfig& cfg,
                                         const Rng& rng) {
  if (cfg.trials < kMinAuditTrials) {
    return absl::ResourceExhaustedError(
        absl::StrCat("audit needs at least ", kMinAuditTrials,
                     " trials per dataset for its confidence slack, got ",
                     cfg.trials));
  }
  if (!(cfg.epsilon >= 0) || !(cfg.delta >= 0 && cfg.delta < 1) ||
      !(cfg.confidence > 0 && cfg.confidence < 1)) {
    return absl::InvalidArgumentError(
        "need epsilon >= 0, delta in [0, 1), confidence in (0, 1)");
  }
  AuditReport report;
  report.mechanism = std::string(name);
  report.trials = cfg.trials;
  absl::StatusOr<FrequencyTable> base =
      Tabulate(mechanism, s, cfg.trials, cfg.threads, rng.Split(0));
  if (!base.ok()) return base.status();
  report.base = *std::move(base);
  for (std::size_t k = 0; k < neighbors.size(); ++k) {
    absl::StatusOr<FrequencyTable> t = Tabulate(
        mechanism, neighbors[k], cfg.trials, cfg.threads, rng.Split(k + 1));
    if (!t.ok()) return t.status();
    report.neighbors.push_back(*std::move(t));
  }

  struct Pending {
    int neighbor;
    bool base_on_left;
    std::vector<std::string> event;
  };
  std::vector<Pending> pending;
  for (std::size_t k = 0; k < report.neighbors.size(); ++k) {
    const FrequencyTable& other = report.neighbors[k];
    for (bool base_left : {true, false}) {
      const FrequencyTable& left = base_left ? report.base : other;
      const FrequencyTable& right = base_left ? other : report.base;
      for (auto& e : Events(left, right)) {
        pending.push_back({static_cast<int>(k), base_left, std::move(e)});
      }
    }
    for (const std::string& l : Support(report.base, other)) {
      const std::int64_t a = CountOf(report.base, l);
      const std::int64_t b = CountOf(other, l);
      if (a >= cfg.min_count && b >= cfg.min_count) {
        report.max_log_ratio = std::max(
            report.max_log_ratio, std::abs(std::log(static_cast<double>(a) / b)));
      } else if (std::max(a, b) >= cfg.min_count && std::min(a, b) == 0) {
        report.max_log_ratio = std::numeric_limits<double>::infinity();
      }
    }
  }
  report.events_checked = static_cast<std::int64_t>(pending.size());
  // Two intervals per event share the family-wise level.
  const double alpha =
      cfg.confidence / std::max<double>(1.0, 2.0 * pending.size());
  const double n = static_cast<double>(cfg.trials);
  for (const Pending& p : pending) {
    const FrequencyTable& other = report.neighbors[p.neighbor];
    const FrequencyTable& left = p.base_on_left ? report.base : other;
    const FrequencyTable& right = p.base_on_left ? other : report.base;
    std::int64_t cl = 0;
    std::int64_t cr = 0;
    for (const std::string& l : p.event) {
      cl += CountOf(left, l);
      cr += CountOf(right, l);
    }
    const ProportionInterval il = ClopperPearson(cl, cfg.trials, alpha);
    const ProportionInterval ir = ClopperPearson(cr, cfg.trials, alpha);
    if (il.lower > std::exp(cfg.epsilon) * ir.upper + cfg.delta) {
      report.violations.push_back({p.neighbor, p.base_on_left, p.event,
                                   cl / n, cr / n, il.lower, ir.upper});
    }
  }
  return report;
}

LabeledMechanism RandomizedResponse(double epsilon) {
  const double keep = std::exp(epsilon) / (1 + std::exp(epsilon));
  return [keep](const Dataset& s, Rng& rng) -> absl::StatusOr<std::string> {
    if (s.size() == 0) return absl::InvalidArgumentError("empty dataset");
    const bool bit = s.points()[0][0] != 0.0;
    const bool released = rng.Bernoulli(keep) ? bit : !bit;
    return std::string(released ? "1" : "0");
  };
}

}  // namespace oracle_dp
