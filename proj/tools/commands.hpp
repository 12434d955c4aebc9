// Copyright 2026 The hcplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hcp::cli {

// Environment variable naming the default output directory. Without it and
// without --out, reports go to stdout.
inline constexpr const char* kOutDirEnv = "HCPLAB_OUT_DIR";

// Runs one hcplab invocation. `args` excludes the program name. Returns the
// process exit status: 0 when every requested output was produced, 1 on
// domain, parse or I/O errors, and CLI11's usage codes for bad flags.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hcp::cli
