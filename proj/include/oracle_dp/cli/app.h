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

#ifndef ORACLE_DP_CLI_APP_H_
#define ORACLE_DP_CLI_APP_H_

#include <ostream>

namespace oracle_dp {

// Parses argv, runs the subcommand and returns the process exit code.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace oracle_dp

#endif  // ORACLE_DP_CLI_APP_H_
