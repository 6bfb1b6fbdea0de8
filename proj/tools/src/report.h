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

#ifndef QLSWALK_TOOLS_REPORT_H_
#define QLSWALK_TOOLS_REPORT_H_

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "qlswalk/macaulay.h"
#include "qlswalk/numerics.h"
#include "qlswalk/qpe_sim.h"
#include "qlswalk/system_model.h"

namespace qlswalk::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json vector_json(const Vector& v);

// "x1 x2 ... xn" as a bit string, x1 first.
std::string assignment_string(Monomial assignment, int num_vars);

Json metrics_json(const AugmentedSystem& sys, const InstanceMetrics& metrics);
Json qls_run_json(const QlsRun& run);
Json recovery_json(const RecoveryResult& result, int num_vars);

// Writes to path, or to out when path is empty. One trailing newline.
void write_report(const Json& report, const std::string& path, std::ostream& out);

}  // namespace qlswalk::cli

#endif  // QLSWALK_TOOLS_REPORT_H_
