// Copyright 2026 The PPPM Authors
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pppm::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationErrors = 1,
  kLintErrors = 2,
  kParseError = 3,
  kUsageError = 4,
};

// Runs one invocation. args[0] is the program name. `styled` enables ANSI
// colour in human-readable output.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, bool styled = false);

}  // namespace pppm::cli
