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

#ifndef ORACLE_DP_CLI_COMMANDS_H_
#define ORACLE_DP_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "json.hpp"
#include "oracle_dp/cli/config.h"

namespace oracle_dp {

// Commands that produce run records.
std::span<const char* const> CommandNames();

struct CommandOutput {
  // Replayable result; compared bit for bit by Replay().
  nlohmann::json payload;
  std::int64_t oracle_calls = 0;
  // The mechanism released Fail.
  bool mechanism_failed = false;
  // A verification command found a defect.
  bool check_failed = false;
  // Human-readable text for stdout.
  std::string summary;
  // Files to write under out_dir: (file name, content).
  std::vector<std::pair<std::string, std::string>> files;
};

// Runs `command` without touching the file system beyond reading inputs.
absl::StatusOr<CommandOutput> RunCommand(absl::string_view command,
                                         const ExperimentConfig& cfg);

// 0 ok, 2 input error, 3 capacity error, 4 mechanism Fail, 1 otherwise.
int ExitCode(const absl::StatusOr<CommandOutput>& result);
// "ok" | "fail" | "check-failed" | "capacity-error" | "input-error" | "error".
std::string RunStatus(const absl::StatusOr<CommandOutput>& result);

// One line of runs.jsonl.
nlohmann::json MakeRunRecord(absl::string_view command,
                             const ExperimentConfig& cfg,
                             const absl::StatusOr<CommandOutput>& result,
                             double wall_time_s);

// Re-runs a record's command with its parameters (threads optionally
// replaced) and checks that status and payload are identical.
absl::StatusOr<bool> ReplayRecord(const nlohmann::json& record,
                                  std::optional<std::int64_t> threads);

// Executes a command end to end: writes outputs and appends the run record
// to <out_dir>/runs.jsonl. Returns the exit code.
int ExecuteAndRecord(absl::string_view command, const ExperimentConfig& cfg,
                     std::ostream& out, std::ostream& err);

std::string VersionString();

}  // namespace oracle_dp

#endif  // ORACLE_DP_CLI_COMMANDS_H_
