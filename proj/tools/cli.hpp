// Copyright 2026 The viewbayes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VIEWBAYES_TOOLS_CLI_HPP
#define VIEWBAYES_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace viewbayes::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitReformulate = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace viewbayes::cli

#endif  // VIEWBAYES_TOOLS_CLI_HPP
