// Copyright 2026 The qlswalk Authors
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

#ifndef QLSWALK_TOOLS_CLI_H_
#define QLSWALK_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace qlswalk::cli {

// Process exit codes, one per failure class.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,          // bad flags or unparseable input file
  kExitInconsistent = 2,   // b outside the column space of A
  kExitRepetitionCap = 3,  // QLS rounds exhausted
  kExitVerification = 4,   // recovered assignment or invariant check failed
  kExitInvalid = 5,        // argument out of range or instance too large
};

// Runs one subcommand. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Worker count for sweeps: QLS_WALK_THREADS when set to a positive integer,
// otherwise the hardware concurrency.
unsigned sweep_threads();

}  // namespace qlswalk::cli

#endif  // QLSWALK_TOOLS_CLI_H_
