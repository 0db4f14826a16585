/* Copyright 2026 The strucheck Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef STRUCHECK_CLI_HPP
#define STRUCHECK_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace strucheck {

enum ExitCode : int {
    kExitClean = 0,       // ran, no violations
    kExitViolations = 1,  // ran, violations found
    kExitError = 2,       // usage, parse, extraction or rule errors
};

/// Runs one `strucheck` invocation. `args` excludes the program name.
/// Reports go to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace strucheck

#endif  // STRUCHECK_CLI_HPP
