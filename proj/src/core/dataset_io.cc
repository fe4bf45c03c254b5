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

#include "oracle_dp/core/dataset_io.h"

#include <fstream>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"

namespace oracle_dp {

absl::StatusOr<Dataset> ParseDataset(absl::string_view text) {
  std::vector<DataPoint> points;
  int line_number = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_number;
    absl::string_view line = absl::StripAsciiWhitespace(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> values;
    for (absl::string_view field : absl::StrSplit(line, ',')) {
      double v;
      if (!absl::SimpleAtod(absl::StripAsciiWhitespace(field), &v)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "line ", line_number, ": cannot parse value '", field, "'"));
      }
      values.push_back(v);
    }
    if (!points.empty() &&
        static_cast<int>(values.size()) != points.front().dim()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": expected ",
                       points.front().dim(), " values, got ", values.size()));
    }
    points.emplace_back(std::move(values));
  }
  return Dataset::Create(std::move(points));
}

absl::StatusOr<Dataset> ReadDatasetFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  absl::StatusOr<Dataset> dataset = ParseDataset(buffer.str());
  if (!dataset.ok()) {
    return absl::Status(dataset.status().code(),
                        absl::StrCat(path, ": ", dataset.status().message()));
  }
  return dataset;
}

absl::Status CheckDatasetInUniverse(const Dataset& dataset,
                                    const QueryClass& query_class) {
  for (int i = 0; i < dataset.size(); ++i) {
    if (!query_class.Contains(dataset[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("record ", i + 1, " ", dataset[i].ToString(),
                       " is not in the universe of ", query_class.Describe()));
    }
  }
  return absl::OkStatus();
}

std::string FormatDataset(const Dataset& dataset) {
  std::string out;
  for (const DataPoint& p : dataset.points()) {
    absl::StrAppend(&out, absl::StrJoin(p.values(), ","), "\n");
  }
  return out;
}

absl::Status WriteDatasetFile(const std::string& path, const Dataset& dataset) {
  std::ofstream out(path);
  if (!out) return absl::PermissionDeniedError(absl::StrCat("cannot write ", path));
  out << FormatDataset(dataset);
  return out ? absl::OkStatus()
             : absl::DataLossError(absl::StrCat("short write to ", path));
}

}  // namespace oracle_dp
