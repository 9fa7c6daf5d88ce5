// Copyright 2026 The streamdec Authors. All Rights Reserved.
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

#ifndef STREAMDEC_CLI_H_
#define STREAMDEC_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace streamdec {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitConfigError = 2;

// Entry point of the `streamdec` tool. `args` excludes the program name.
// Subcommands: decode (trace JSONL), eval (report CSV), sweep (curve CSV).
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace streamdec

#endif  // STREAMDEC_CLI_H_
