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

#ifndef ORACLE_DP_CLI_CONFIG_H_
#define ORACLE_DP_CLI_CONFIG_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace oracle_dp {

struct ConfigKey {
  const char* name;
  const char* default_value;
  const char* help;
};

// Every key accepted in config files and as --flags.
std::span<const ConfigKey> ConfigKeys();
bool IsConfigKey(absl::string_view key);

// Flat key=value settings. Lookups of keys outside ConfigKeys() are
// programming errors and return InvalidArgument.
class ExperimentConfig {
 public:
  // All keys at their defaults; `threads` resolves to DefaultThreads().
  static ExperimentConfig Defaults();

  // Parses "key = value" lines; '#' starts a comment. Unknown keys and
  // malformed lines are rejected with their line number.
  static absl::StatusOr<std::map<std::string, std::string>> ParseText(
      absl::string_view text);
  static absl::StatusOr<std::map<std::string, std::string>> ParseFile(
      const std::string& path);

  // Overrides existing values; rejects unknown keys.
  absl::Status Merge(const std::map<std::string, std::string>& values);

  absl::StatusOr<std::string> GetString(absl::string_view key) const;
  absl::StatusOr<std::int64_t> GetInt(absl::string_view key) const;
  absl::StatusOr<double> GetDouble(absl::string_view key) const;
  absl::StatusOr<bool> GetBool(absl::string_view key) const;
  absl::StatusOr<std::vector<std::int64_t>> GetIntList(absl::string_view key) const;
  absl::StatusOr<std::vector<double>> GetDoubleList(absl::string_view key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace oracle_dp

#endif  // ORACLE_DP_CLI_CONFIG_H_
