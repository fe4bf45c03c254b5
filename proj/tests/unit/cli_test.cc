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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "absl/strings/ascii.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "oracle_dp/cli/app.h"
#include "oracle_dp/cli/commands.h"
#include "oracle_dp/cli/config.h"
#include "oracle_dp/core/dataset_io.h"
#include "oracle_dp/core/query_class.h"
#include "oracle_dp/synthgen/game.h"
#include "oracle_dp/synthgen/oracle_query.h"

namespace oracle_dp {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    data_ = (dir_ / "data.txt").string();
    std::ofstream f(data_);
    Rng rng(5);
    for (int i = 0; i < 400; ++i) {
      f << rng.Bernoulli(0.3) << "," << rng.Bernoulli(0.6) << ","
        << rng.Bernoulli(0.8) << "\n";
    }
  }

  int Run(std::vector<std::string> args) {
    std::vector<const char*> argv = {"oracle-dp"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return RunCli(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  std::string OutDir() const { return (dir_ / "out").string(); }

  std::vector<json> Records() const {
    std::ifstream in(dir_ / "out" / "runs.jsonl");
    std::vector<json> out;
    for (std::string line; std::getline(in, line);) {
      if (!line.empty()) out.push_back(json::parse(line));
    }
    return out;
  }

  fs::path dir_;
  std::string data_;
  std::stringstream out_;
  std::stringstream err_;
};

TEST(ConfigTest, ParsesAndRejectsUnknownKeys) {
  auto ok = ExperimentConfig::ParseText("# comment\n eps = 2 \n\nclass=par # tail\n");
  ASSERT_TRUE(ok.ok());
  EXPECT_EQ(ok->at("eps"), "2");
  EXPECT_EQ(ok->at("class"), "par");
  auto bad = ExperimentConfig::ParseText("eps = 2\nepsilon = 3\n");
  EXPECT_EQ(bad.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_NE(bad.status().message().find("line 2"), std::string::npos);
  EXPECT_FALSE(ExperimentConfig::ParseText("eps 2\n").ok());
  EXPECT_FALSE(ExperimentConfig::ParseText("eps=1\neps=2\n").ok());
}

TEST(ConfigTest, TypedGetters) {
  ExperimentConfig cfg = ExperimentConfig::Defaults();
  ASSERT_TRUE(cfg.Merge({{"n_grid", "10, 20,30"}, {"eps", "abc"}}).ok());
  EXPECT_EQ(*cfg.GetIntList("n_grid"), (std::vector<std::int64_t>{10, 20, 30}));
  EXPECT_FALSE(cfg.GetDouble("eps").ok());
  EXPECT_FALSE(cfg.GetString("nope").ok());
  EXPECT_FALSE(cfg.Merge({{"nope", "1"}}).ok());
  EXPECT_GE(*cfg.GetInt("threads"), 1);
}

TEST_F(CliTest, LearnWritesOneRecordAndIsDeterministic) {
  ASSERT_EQ(Run({"learn", "--data", data_, "--out-dir", OutDir(), "--seed", "7"}), 0);
  const std::string first = out_.str();
  ASSERT_EQ(Run({"learn", "--data", data_, "--out-dir", OutDir(), "--seed", "7"}), 0);
  EXPECT_EQ(out_.str(), first);
  std::vector<json> records = Records();
  ASSERT_EQ(records.size(), 2u);
  for (json& r : records) r.erase("wall_time_s");
  EXPECT_EQ(records[0], records[1]);
  EXPECT_EQ(records[0]["status"], "ok");
  EXPECT_EQ(records[0]["version"], VersionString());
  EXPECT_EQ(records[0]["output"]["query"].get<std::string>() + "\n", first);
}

TEST_F(CliTest, SingleLineDataset) {
  const std::string one = (dir_ / "one.txt").string();
  std::ofstream(one) << "1,0,1\n";
  ASSERT_EQ(Run({"learn", "--data", one, "--out-dir", OutDir()}), 0);
  EXPECT_TRUE(ParseQuery(absl::StripAsciiWhitespace(out_.str()), 3).ok());
}

TEST_F(CliTest, ConfigFileUnderFlagPrecedence) {
  const std::string cfg = (dir_ / "exp.cfg").string();
  std::ofstream(cfg) << "eps = 0.5\nseed = 3\nmechanism = rspm_gaussian\n";
  ASSERT_EQ(Run({"learn", "--config", cfg, "--data", data_, "--out-dir", OutDir(),
                 "--seed", "9"}),
            0);
  json r = Records().back();
  EXPECT_EQ(r["params"]["eps"], "0.5");
  EXPECT_EQ(r["params"]["seed"], "9");
  EXPECT_EQ(r["output"]["mechanism"], "rspm_gaussian");
  std::ofstream(cfg) << "bogus = 1\n";
  EXPECT_EQ(Run({"learn", "--config", cfg, "--data", data_}), 2);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Run({"learn", "--data", (dir_ / "missing").string(), "--out-dir", OutDir()}), 2);
  EXPECT_EQ(Run({"learn", "--data", data_, "--eps", "-1", "--out-dir", OutDir()}), 2);
  EXPECT_EQ(Run({"learn", "--data", data_, "--unknown", "1"}), 2);
  EXPECT_EQ(Run({"synth", "--data", data_, "--preset", "prsma", "--T", "3",
                 "--out-dir", OutDir()}),
            3);
  EXPECT_EQ(Run({"learn", "--data", data_, "--policy", "bernoulli:1",
                 "--out-dir", OutDir()}),
            4);
  std::vector<json> records = Records();
  ASSERT_EQ(records.size(), 4u);
  EXPECT_EQ(records[0]["status"], "input-error");
  EXPECT_EQ(records[2]["status"], "capacity-error");
  EXPECT_EQ(records[3]["status"], "fail");
}

TEST_F(CliTest, MalformedDatasetReportsLine) {
  const std::string bad = (dir_ / "bad.txt").string();
  std::ofstream(bad) << "1,0,1\n1,x,0\n";
  EXPECT_EQ(Run({"learn", "--data", bad, "--out-dir", OutDir()}), 2);
  EXPECT_NE(err_.str().find("line 2"), std::string::npos);
}

TEST_F(CliTest, SynthOutputMatchesRecord) {
  ASSERT_EQ(Run({"synth", "--data", data_, "--T", "1", "--eps", "2", "--beta", "0.1",
                 "--out-dir", OutDir()}),
            0);
  json r = Records().back();
  const std::string path = r["output"]["synthetic_path"];
  Dataset synthetic = *ReadDatasetFile(path);
  Dataset s = *ReadDatasetFile(data_);
  QueryClass qc = *MakeBooleanClass(Family::kConjunction, 3);
  const double alpha0 = r["output"]["alpha0"];
  EXPECT_EQ(synthetic.size(), SyntheticSampleCount(qc.log_size(), alpha0, 0.1));
  EXPECT_EQ(r["output"]["points"], synthetic.size());
  EXPECT_DOUBLE_EQ(*MaxQueryError(s.points(), synthetic.points(), qc),
                   r["output"]["max_query_error"].get<double>());
}

TEST_F(CliTest, AuditBenchRegretAndVerify) {
  const std::string tiny = (dir_ / "tiny.txt").string();
  std::ofstream(tiny) << "0,1\n1,1\n";
  ASSERT_EQ(Run({"audit", "--class", "conj", "--d", "2", "--mechanism", "constant",
                 "--data", tiny, "--out-dir", OutDir()}),
            0);
  EXPECT_EQ(Records().back()["output"]["passed"], true);
  ASSERT_EQ(Run({"bench", "--n-grid", "200,400", "--eps-grid", "1,2", "--trials", "20",
                 "--out-dir", OutDir()}),
            0);
  EXPECT_EQ(Records().back()["output"]["rows"].size(), 4u);
  std::ifstream tsv(dir_ / "out" / "bench_1.tsv");
  int lines = 0;
  for (std::string l; std::getline(tsv, l);) ++lines;
  EXPECT_EQ(lines, 5);
  ASSERT_EQ(Run({"regret", "--kind", "fpl", "--class", "par", "--d", "2", "--eps",
                 "0.1", "--T-grid", "100,400", "--runs", "5", "--out-dir", OutDir()}),
            0);
  json regret = Records().back()["output"];
  EXPECT_EQ(regret["rows"].size(), 2u);
  EXPECT_TRUE(regret.contains("non_increasing"));
  ASSERT_EQ(Run({"verify-separators", "--class", "dl1", "--d", "3", "--out-dir",
                 OutDir()}),
            0);
  EXPECT_EQ(Records().back()["output"]["primal_ok"], true);
}

TEST_F(CliTest, ReplayIsIndependentOfThreads) {
  const std::string tiny = (dir_ / "tiny.txt").string();
  std::ofstream(tiny) << "0,1\n1,1\n";
  ASSERT_EQ(Run({"audit", "--class", "conj", "--d", "2", "--data", tiny, "--threads",
                 "1", "--out-dir", OutDir()}),
            0);
  ASSERT_EQ(Run({"bench", "--trials", "30", "--threads", "3", "--out-dir", OutDir()}), 0);
  ASSERT_EQ(Run({"learn", "--data", data_, "--mechanism", "prsma", "--eps", "31",
                 "--delta", "5.5", "--out-dir", OutDir()}),
            0);
  const std::string log = (dir_ / "out" / "runs.jsonl").string();
  for (int line = 1; line <= 3; ++line) {
    for (const char* threads : {"1", "4"}) {
      EXPECT_EQ(Run({"replay", "--record", log, "--line", absl::StrCat(line),
                     "--threads", threads}),
                0)
          << out_.str() << err_.str();
      EXPECT_NE(out_.str().find("identical"), std::string::npos);
    }
  }
}

TEST_F(CliTest, ReplayDetectsTampering) {
  ASSERT_EQ(Run({"learn", "--data", data_, "--out-dir", OutDir()}), 0);
  json r = Records().back();
  r["output"]["query"] = "conj{}";
  EXPECT_FALSE(*ReplayRecord(r, std::nullopt));
  r = Records().back();
  EXPECT_TRUE(*ReplayRecord(r, 2));
}

}  // namespace
}  // namespace oracle_dp
