// Copyright 2026 The adiastep Authors
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

#include <iosfwd>

#include "adiastep/cli/config.hpp"
#include "adiastep/cli/output.hpp"

namespace adiastep::cli {

/// Computes the subcommand's result document. Throws InvalidArgument on bad
/// input and ConvergenceError on solver failure.
Document execute(const RunConfig& config);

/// Validates, executes and writes output, mapping failures to exit codes.
/// Diagnostics go to `err`; results go to --out or `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses arguments and runs.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace adiastep::cli
