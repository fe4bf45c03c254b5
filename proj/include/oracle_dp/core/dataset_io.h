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

#ifndef ORACLE_DP_CORE_DATASET_IO_H_
#define ORACLE_DP_CORE_DATASET_IO_H_

#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/statusor.h"
#include "oracle_dp/core/data_point.h"
#include "oracle_dp/core/query_class.h"

namespace oracle_dp {

// Dataset text format: one record per line, comma-separated coordinate
// values, optional trailing label column for loss classes. Lines starting
// with '#' and blank lines are ignored. Malformed lines are reported with
// their 1-based line number.
absl::StatusOr<Dataset> ParseDataset(absl::string_view text);
absl::StatusOr<Dataset> ReadDatasetFile(const std::string& path);

// Rejects points whose coordinates are not values of the class universe.
absl::Status CheckDatasetInUniverse(const Dataset& dataset,
                                    const QueryClass& query_class);

std::string FormatDataset(const Dataset& dataset);
absl::Status WriteDatasetFile(const std::string& path, const Dataset& dataset);

}  // namespace oracle_dp

#endif  // ORACLE_DP_CORE_DATASET_IO_H_
