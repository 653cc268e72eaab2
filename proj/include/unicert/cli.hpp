// Copyright 2026 The Unicert Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace unicert {

inline constexpr const char* kToolVersion = "0.1.0";

/// Exit codes: 0 success (certify: Certified), 2 certify: Failed, 1 usage or
/// data error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFailed = 2;

/// Runs the command line `args` (args[0] is the program name). Diagnostics
/// go to `err`, human-readable results to `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);

}  // namespace unicert
