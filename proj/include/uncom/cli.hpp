// Copyright 2026 The uncom Authors.
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

#ifndef UNCOM_CLI_HPP
#define UNCOM_CLI_HPP

#include <ostream>

namespace uncom {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUnresolved = 1;  // command could not be grounded / eval mismatches
inline constexpr int kExitInput = 2;       // I/O, schema or usage error

// Entry point of the `uncom` tool: ground, eval, validate.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uncom

#endif  // UNCOM_CLI_HPP
