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

#include "oracle_dp/core/parallel.h"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace oracle_dp {

int DefaultThreads() {
  return std::max(1u, std::thread::hardware_concurrency());
}

absl::Status ParallelFor(std::int64_t count, int threads,
                         const std::function<absl::Status(std::int64_t)>& task) {
  if (count <= 0) return absl::OkStatus();
  std::vector<absl::Status> statuses(count);
  const int workers =
      static_cast<int>(std::clamp<std::int64_t>(threads, 1, count));
  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) statuses[i] = task(i);
  } else {
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::int64_t i = next++; i < count; i = next++) {
          statuses[i] = task(i);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }
  for (const absl::Status& s : statuses) {
    if (!s.ok()) return s;
  }
  return absl::OkStatus();
}

}  // namespace oracle_dp
