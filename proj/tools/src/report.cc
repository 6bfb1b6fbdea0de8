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

#include "report.h"

#include <fstream>
#include <stdexcept>

namespace qlswalk::cli {

Json vector_json(const Vector& v) {
  Json arr = Json::array();
  for (Index k = 0; k < v.size(); ++k) arr.push_back(v(k));
  return arr;
}

std::string assignment_string(Monomial assignment, int num_vars) {
  std::string s(static_cast<std::size_t>(num_vars), '0');
  for (int k = 0; k < num_vars; ++k) {
    if (assignment >> k & 1U) s[static_cast<std::size_t>(k)] = '1';
  }
  return s;
}

Json metrics_json(const AugmentedSystem& sys, const InstanceMetrics& metrics) {
  Json j;
  j["rows"] = sys.rows();
  j["cols"] = sys.cols();
  j["s"] = sys.sparsity;
  j["ET"] = metrics.et;
  j["kappa_A"] = metrics.kappa_a;
  j["kappa_H"] = metrics.kappa_h;
  j["gamma"] = metrics.gamma;
  j["null_overlap"] = metrics.null_overlap();
  j["y_norm_sq"] = metrics.y_norm_sq;
  j["y"] = vector_json(metrics.y);
  j["p"] = vector_json(metrics.p);
  j["row_sq_norms"] = vector_json(sys.row_sq_norms);
  return j;
}

Json qls_run_json(const QlsRun& run) {
  Json j;
  j["backend"] = run.backend;
  j["epsilon"] = run.epsilon;
  j["seed"] = run.seed;
  j["norm_known"] = run.norm_known;
  j["y_state"] = vector_json(run.output_state);
  j["exact_state"] = vector_json(run.exact_state);
  j["trace_distance"] = run.trace_distance;
  j["ET"] = run.et;
  j["s"] = run.sparsity;
  j["kappa_A"] = run.kappa_a;
  j["kappa_H"] = run.kappa_h;
  j["gamma"] = run.gamma;
  j["null_overlap"] = run.null_overlap;
  j["y_norm_sq"] = run.y_norm_sq;
  j["delta"] = run.delta;
  j["delta_state_prep"] = run.delta_state_prep;
  j["p_B_norm"] = run.p_b_norm;
  j["repetitions"] = run.rounds;
  j["repetition_cap"] = run.repetition_cap;
  j["probabilities"] = {
      {"phase_zero", run.phase_zero_probability},
      {"measurement_success", run.measurement_success_probability},
      {"round_success", run.round_success_probability},
  };
  j["counts"] = {
      {"phase_zero", run.phase_zero_count},
      {"measurement_success", run.measurement_success_count},
  };
  if (run.kernel) {
    j["kernel"] = {
        {"Delta", run.kernel->gap},
        {"ell", run.kernel->degree},
        {"eta", run.kernel->eta},
        {"success_prob", run.kernel->success_probability},
        {"theta_distance", run.kernel->theta_distance},
    };
  }
  return j;
}

Json recovery_json(const RecoveryResult& result, int num_vars) {
  Json j;
  j["assignment"] = assignment_string(result.assignment, num_vars);
  j["verified"] = result.verified;
  Json samples = Json::array();
  for (Monomial s : result.samples) samples.push_back(assignment_string(s, num_vars));
  j["samples"] = std::move(samples);
  return j;
}

void write_report(const Json& report, const std::string& path, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write report to " + path);
  f << text;
}

}  // namespace qlswalk::cli
