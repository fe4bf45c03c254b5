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

#include "oracle_dp/cli/config.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "oracle_dp/core/parallel.h"

namespace oracle_dp {
namespace {

constexpr ConfigKey kKeys[] = {
    {"class", "conj", "query family: conj | disj | par | half | dl1"},
    {"d", "3", "data dimension"},
    {"loss_lift", "false", "use the loss class of the hypothesis family"},
    {"weights", "-1,1", "halfspace weight grid V"},
    {"mechanism", "rspm",
     "learn/audit/bench mechanism: rspm | rspm_gaussian | prsma (audit also "
     "takes erm | constant)"},
    {"eps", "1", "privacy parameter epsilon"},
    {"delta", "0.0001", "privacy parameter delta"},
    {"beta", "0.05", "failure probability"},
    {"T", "0", "synthesis rounds; 0 uses the preset"},
    {"alpha0", "0", "per-round accuracy; 0 uses the preset"},
    {"preset", "gaussian-rspm",
     "synthesis preset: private-oracle | gaussian-rspm | prsma"},
    {"trials", "10000", "trials per dataset (audit) or per row (bench)"},
    {"n_grid", "500,1000", "bench dataset sizes"},
    {"eps_grid", "1", "bench epsilons"},
    {"T_grid", "500,2000", "regret horizons"},
    {"runs", "20", "regret seeds per horizon"},
    {"kind", "ftpl", "regret experiment: ftpl | fpl"},
    {"ftpl_scale", "0", "CONTEXT-FTPL noise scale; 0 uses the default"},
    {"policy", "never",
     "oracle failure policy: never | bernoulli:p | calls:i,j | trigger[:x]"},
    {"reps_cap", "100000", "largest PRSMA repetition count"},
    {"data", "", "dataset file"},
    {"out_dir", "runs", "directory for runs.jsonl and outputs"},
    {"seed", "1", "root seed"},
    {"threads", "0", "worker threads; 0 uses all cores"},
};

absl::Status LineError(int line, absl::string_view what) {
  return absl::InvalidArgumentError(absl::StrCat("config line ", line, ": ", what));
}

}  // namespace

std::span<const ConfigKey> ConfigKeys() { return kKeys; }

bool IsConfigKey(absl::string_view key) {
  for (const ConfigKey& k : kKeys) {
    if (key == k.name) return true;
  }
  return false;
}

ExperimentConfig ExperimentConfig::Defaults() {
  ExperimentConfig cfg;
  for (const ConfigKey& k : kKeys) cfg.values_[k.name] = k.default_value;
  cfg.values_["threads"] = absl::StrCat(DefaultThreads());
  return cfg;
}

absl::StatusOr<std::map<std::string, std::string>> ExperimentConfig::ParseText(
    absl::string_view text) {
  std::map<std::string, std::string> out;
  int line_no = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    line = line.substr(0, line.find('#'));
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == absl::string_view::npos) return LineError(line_no, "expected key = value");
    const std::string key(absl::StripAsciiWhitespace(line.substr(0, eq)));
    const std::string value(absl::StripAsciiWhitespace(line.substr(eq + 1)));
    if (!IsConfigKey(key)) {
      return LineError(line_no, absl::StrCat("unknown key '", key, "'"));
    }
    if (out.contains(key)) {
      return LineError(line_no, absl::StrCat("duplicate key '", key, "'"));
    }
    out[key] = value;
  }
  return out;
}

absl::StatusOr<std::map<std::string, std::string>> ExperimentConfig::ParseFile(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open config ", path));
  std::stringstream buf;
  buf << in.rdbuf();
  absl::StatusOr<std::map<std::string, std::string>> out = ParseText(buf.str());
  if (!out.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", out.status().message()));
  }
  return out;
}

absl::Status ExperimentConfig::Merge(
    const std::map<std::string, std::string>& values) {
  for (const auto& [k, v] : values) {
    if (!IsConfigKey(k)) {
      return absl::InvalidArgumentError(absl::StrCat("unknown key '", k, "'"));
    }
    values_[k] = v;
  }
  if (values_["threads"] == "0") values_["threads"] = absl::StrCat(DefaultThreads());
  return absl::OkStatus();
}

absl::StatusOr<std::string> ExperimentConfig::GetString(
    absl::string_view key) const {
  auto it = values_.find(std::string(key));
  if (it == values_.end()) {
    return absl::InvalidArgumentError(absl::StrCat("no config key '", key, "'"));
  }
  return it->second;
}

absl::StatusOr<std::int64_t> ExperimentConfig::GetInt(absl::string_view key) const {
  absl::StatusOr<std::string> s = GetString(key);
  if (!s.ok()) return s.status();
  std::int64_t v = 0;
  if (!absl::SimpleAtoi(*s, &v)) {
    return absl::InvalidArgumentError(
        absl::StrCat(key, " = '", *s, "' is not an integer"));
  }
  return v;
}

absl::StatusOr<double> ExperimentConfig::GetDouble(absl::string_view key) const {
  absl::StatusOr<std::string> s = GetString(key);
  if (!s.ok()) return s.status();
  double v = 0;
  if (!absl::SimpleAtod(*s, &v) || !std::isfinite(v)) {
    return absl::InvalidArgumentError(
        absl::StrCat(key, " = '", *s, "' is not a finite number"));
  }
  return v;
}

absl::StatusOr<bool> ExperimentConfig::GetBool(absl::string_view key) const {
  absl::StatusOr<std::string> s = GetString(key);
  if (!s.ok()) return s.status();
  bool v = false;
  if (!absl::SimpleAtob(*s, &v)) {
    return absl::InvalidArgumentError(
        absl::StrCat(key, " = '", *s, "' is not a boolean"));
  }
  return v;
}

absl::StatusOr<std::vector<std::int64_t>> ExperimentConfig::GetIntList(
    absl::string_view key) const {
  absl::StatusOr<std::string> s = GetString(key);
  if (!s.ok()) return s.status();
  std::vector<std::int64_t> out;
  for (absl::string_view part : absl::StrSplit(*s, ',', absl::SkipWhitespace())) {
    std::int64_t v = 0;
    if (!absl::SimpleAtoi(absl::StripAsciiWhitespace(part), &v)) {
      return absl::InvalidArgumentError(
          absl::StrCat(key, " has a non-integer entry '", part, "'"));
    }
    out.push_back(v);
  }
  if (out.empty()) return absl::InvalidArgumentError(absl::StrCat(key, " is empty"));
  return out;
}

absl::StatusOr<std::vector<double>> ExperimentConfig::GetDoubleList(
    absl::string_view key) const {
  absl::StatusOr<std::string> s = GetString(key);
  if (!s.ok()) return s.status();
  std::vector<double> out;
  for (absl::string_view part : absl::StrSplit(*s, ',', absl::SkipWhitespace())) {
    double v = 0;
    if (!absl::SimpleAtod(absl::StripAsciiWhitespace(part), &v) ||
        !std::isfinite(v)) {
      return absl::InvalidArgumentError(
          absl::StrCat(key, " has a non-numeric entry '", part, "'"));
    }
    out.push_back(v);
  }
  if (out.empty()) return absl::InvalidArgumentError(absl::StrCat(key, " is empty"));
  return out;
}

}  // namespace oracle_dp
