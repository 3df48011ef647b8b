// Copyright 2026 The Datadesc Authors
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

#ifndef DATADESC_CLI_HPP_
#define DATADESC_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace datadesc {

struct CliStreams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  bool color = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // Error diagnostics or rule violations
inline constexpr int kExitUsage = 2;

/// Runs the `datadesc` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, CliStreams io);

/// True unless DATADESC_NO_COLOR is set or the stream is not a terminal.
bool color_enabled_for_stdout();

}  // namespace datadesc

#endif  // DATADESC_CLI_HPP_
