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

#ifndef ORACLE_DP_CORE_PARALLEL_H_
#define ORACLE_DP_CORE_PARALLEL_H_

#include <cstdint>
#include <functional>

#include "absl/status/status.h"

namespace oracle_dp {

// std::thread::hardware_concurrency(), at least 1.
int DefaultThreads();

// Runs task(i) for i in [0, count) on up to `threads` workers. Tasks must
// write only to per-index slots. Returns the error of the lowest failing
// index, so the result does not depend on scheduling.
absl::Status ParallelFor(std::int64_t count, int threads,
                         const std::function<absl::Status(std::int64_t)>& task);

}  // namespace oracle_dp

#endif  // ORACLE_DP_CORE_PARALLEL_H_
