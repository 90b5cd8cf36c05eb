// Copyright 2026 The uicheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UICHECK_TOOLS_CLI_HPP
#define UICHECK_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace uic::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kInconclusive = 3 };

/// Parses `start:stop:count[:log|lin]` or a comma-separated list into a
/// strictly increasing, nonnegative level grid. Log-grid points within 1e-9
/// (relative) of an integer are snapped to it. Throws uic::Error.
std::vector<double> parse_level_grid(std::string_view spec);

/// Runs one command line (without the program name). Everything the command
/// produces goes to `out` (or to --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uic::cli

#endif  // UICHECK_TOOLS_CLI_HPP
