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

#ifndef QLSWALK_QPE_SIM_H_
#define QLSWALK_QPE_SIM_H_

#include <cstdint>
#include <optional>
#include <string>

#include "qlswalk/numerics.h"
#include "qlswalk/system_model.h"
#include "qlswalk/walk.h"

namespace qlswalk {

// How the phase-zero projector of the walk is obtained.
//  kDenseEigensystem: eigendecomposition of the dense walk unitary.
//  kPrincipalAngles: SVD of the overlap between column and row stars. The walk
//    acts on each pair of principal vectors as a rotation with eigenphases
//    +-2 asin(cosine), so the projector follows without forming the unitary.
enum class SpectralRoute { kDenseEigensystem, kPrincipalAngles };

const char* to_string(SpectralRoute route);

class PhaseEstimationModel {
 public:
  static PhaseEstimationModel from_operator(const WalkOperator& op, double delta);
  static PhaseEstimationModel from_star_states(const StarStateSet& states, double delta);

  double delta() const { return delta_; }
  SpectralRoute route() const { return route_; }
  Index dimension() const { return dimension_; }

  // Pi_delta v, the projection onto eigenvectors with |phase| <= delta.
  Vector project(const Vector& v) const;
  // Dense Pi_delta; intended for small edge spaces.
  Matrix projector() const;
  // Eigenphases of the walk, each listed once per eigenvector.
  const Vector& phases() const { return phases_; }

 private:
  PhaseEstimationModel() = default;

  double delta_ = 0.0;
  SpectralRoute route_ = SpectralRoute::kPrincipalAngles;
  Index dimension_ = 0;
  Vector phases_;

  // kDenseEigensystem
  Matrix dense_projector_;

  // kPrincipalAngles
  SparseMatrix phi_;
  SparseMatrix psi_;
  Matrix col_dirs_;        // column-star coefficients of retained directions
  Matrix row_dirs_;        // row-star coefficients of unpaired retained directions
  Matrix pair_col_;        // column-star coefficients of paired directions
  Matrix pair_row_;        // row-star coefficients of paired directions
  Vector pair_row_scale_;  // 1/sqrt(1-c^2)
  Vector pair_col_scale_;  // c/sqrt(1-c^2)
};

struct PhaseProjection {
  double prob_zero = 0.0;
  // Empty when the phase-zero mass is below 1e-14.
  std::optional<Vector> post_state;
};

PhaseProjection phase_project(const PhaseEstimationModel& model, const Vector& state);

// Column-basis amplitudes <Phi_j|state>; throws when state leaves span{Phi_j}.
Vector collapse_to_columns(const Vector& edge_state, const StarStateSet& states);

struct KernelDetails {
  double gap = 0.0;     // Delta on the normalized H
  int degree = 0;       // Chebyshev degree parameter
  double eta = 0.0;     // tail bound
  double success_probability = 0.0;
  double theta_distance = 0.0;  // |theta' - theta| before the last projection
};

struct QlsRun {
  std::string backend;
  double epsilon = 0.0;
  bool norm_known = false;
  std::uint64_t seed = 0;

  double delta = 0.0;             // precision used
  double delta_state_prep = 0.0;  // eps^2 / ((1+|y|^2) |p_B|)
  double gamma = 0.0;             // |y|^2/(1+|y|^2)
  double null_overlap = 0.0;      // 1/(1+|y|^2)
  double y_norm_sq = 0.0;
  double et = 0.0;
  int sparsity = 0;
  double kappa_a = 0.0;
  double kappa_h = 0.0;
  double p_b_norm = 0.0;

  double phase_zero_probability = 0.0;
  double measurement_success_probability = 0.0;  // given phase zero
  double round_success_probability = 0.0;

  std::uint64_t repetition_cap = 0;
  std::uint64_t rounds = 0;
  std::uint64_t phase_zero_count = 0;
  std::uint64_t measurement_success_count = 0;

  Vector output_state;  // over the N columns, unit norm
  Vector exact_state;   // y / |y|
  double trace_distance = 0.0;

  std::optional<KernelDetails> kernel;
};

class RepetitionCapError : public NumericsError {
 public:
  RepetitionCapError(const std::string& what, QlsRun partial)
      : NumericsError(what), run_(std::move(partial)) {}
  const QlsRun& run() const { return run_; }

 private:
  QlsRun run_;
};

// ceil(48 (1/gamma + 1/(1-gamma)) ln 100)
std::uint64_t repetition_cap(double gamma);

struct QlsOptions {
  double epsilon = 0.1;
  bool norm_known = false;
  std::uint64_t seed = 0;
  SpectralRoute route = SpectralRoute::kPrincipalAngles;
  double precision_constant = 1.0;
  // Overrides the computed precision when positive.
  double delta_override = 0.0;
};

QlsRun run_qls(const AugmentedSystem& sys, const QlsOptions& options);

}  // namespace qlswalk

#endif  // QLSWALK_QPE_SIM_H_
