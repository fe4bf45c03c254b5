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

#include "oracle_dp/cli/app.h"

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_replace.h"
#include "json.hpp"
#include "oracle_dp/cli/commands.h"
#include "oracle_dp/cli/config.h"

namespace oracle_dp {
namespace {

struct SubcommandFlags {
  CLI::App* app = nullptr;
  std::string config_path;
  std::map<std::string, std::string> values;
};

void AddKeyFlags(SubcommandFlags& flags) {
  for (const ConfigKey& key : ConfigKeys()) {
    std::string names = absl::StrCat("--", key.name);
    const std::string dashed = absl::StrReplaceAll(key.name, {{"_", "-"}});
    if (dashed != key.name) absl::StrAppend(&names, ",--", dashed);
    const std::string name = key.name;
    flags.app
        ->add_option_function<std::string>(
            names,
            [&flags, name](const std::string& v) { flags.values[name] = v; },
            absl::StrCat(key.help, " (default: ",
                         *key.default_value ? key.default_value : "none", ")"))
        ->type_name("VALUE");
  }
  flags.app->add_option("--config", flags.config_path,
                        "key = value file; flags take precedence");
}

int Replay(const std::string& path, int line, std::optional<std::int64_t> threads,
           std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "cannot open " << path << "\n";
    return 2;
  }
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) {
    if (!l.empty()) lines.push_back(l);
  }
  if (lines.empty()) {
    err << path << " has no records\n";
    return 2;
  }
  const int index = line == 0 ? static_cast<int>(lines.size()) : line;
  if (index < 1 || index > static_cast<int>(lines.size())) {
    err << "record " << line << " out of range (1.." << lines.size() << ")\n";
    return 2;
  }
  nlohmann::json record = nlohmann::json::parse(lines[index - 1], nullptr,
                                                /*allow_exceptions=*/false);
  if (record.is_discarded()) {
    err << path << ":" << index << " is not valid JSON\n";
    return 2;
  }
  absl::StatusOr<bool> same = ReplayRecord(record, threads);
  if (!same.ok()) {
    err << "replay: " << same.status().message() << "\n";
    return 2;
  }
  out << "replay of record " << index << " ("
      << record.value("command", std::string("?")) << "): "
      << (*same ? "identical" : "MISMATCH") << "\n";
  return *same ? 0 : 1;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app("Oracle-efficient differentially private learning and synthetic data");
  app.set_version_flag("--version", VersionString());
  app.require_subcommand(1);

  const std::map<std::string, std::string> descriptions = {
      {"learn", "private learning with rspm, rspm_gaussian or prsma"},
      {"synth", "synthetic data via the query release game"},
      {"audit", "empirical privacy audit against all single-record neighbors"},
      {"regret", "online regret experiments (ftpl data player, fpl learner)"},
      {"bench", "excess-error table over an (n, eps) grid"},
      {"verify-separators", "exhaustively check primal and dual separator sets"},
  };
  std::vector<SubcommandFlags> subs(CommandNames().size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const std::string name = CommandNames()[i];
    subs[i].app = app.add_subcommand(name, descriptions.at(name));
    AddKeyFlags(subs[i]);
  }

  std::string record_path;
  int record_line = 0;
  std::optional<std::int64_t> replay_threads;
  CLI::App* replay = app.add_subcommand("replay", "re-run a run record and compare");
  replay->add_option("--record", record_path, "runs.jsonl file")->required();
  replay->add_option("--line", record_line, "1-based record index; 0 = last");
  replay->add_option_function<std::int64_t>(
      "--threads", [&](const std::int64_t& t) { replay_threads = t; },
      "override the recorded thread count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (replay->parsed()) return Replay(record_path, record_line, replay_threads, out, err);

  for (SubcommandFlags& sub : subs) {
    if (!sub.app->parsed()) continue;
    ExperimentConfig cfg = ExperimentConfig::Defaults();
    if (!sub.config_path.empty()) {
      absl::StatusOr<std::map<std::string, std::string>> file =
          ExperimentConfig::ParseFile(sub.config_path);
      if (!file.ok()) {
        err << file.status().message() << "\n";
        return 2;
      }
      if (absl::Status st = cfg.Merge(*file); !st.ok()) {
        err << st.message() << "\n";
        return 2;
      }
    }
    if (absl::Status st = cfg.Merge(sub.values); !st.ok()) {
      err << st.message() << "\n";
      return 2;
    }
    return ExecuteAndRecord(sub.app->get_name(), cfg, out, err);
  }
  return 2;
}

}  // namespace oracle_dp
