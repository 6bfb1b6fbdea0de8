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

#include "qlswalk/qpe_sim.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

namespace qlswalk {

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < std::numbers::pi)) {
    std::ostringstream os;
    os << "phase precision " << delta << " is outside (0, pi)";
    throw NumericsError(os.str());
  }
}

Matrix gather_columns(const Matrix& m, const std::vector<Index>& cols) {
  Matrix out(m.rows(), static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(k) = m.col(cols[k]);
  return out;
}

}  // namespace

const char* to_string(SpectralRoute route) {
  return route == SpectralRoute::kDenseEigensystem ? "dense-eigensystem"
                                                    : "principal-angles";
}

PhaseEstimationModel PhaseEstimationModel::from_operator(const WalkOperator& op,
                                                         double delta) {
  check_delta(delta);
  PhaseEstimationModel model;
  model.delta_ = delta;
  model.route_ = SpectralRoute::kDenseEigensystem;
  model.dimension_ = op.dimension();
  const UnitaryEigensystem eig = unitary_eig(op.u.cast<std::complex<double>>());
  if (eig.max_residual() > 1e-8) {
    throw NumericsError("walk eigensystem residual exceeds 1e-8");
  }
  model.phases_ = eig.phases;
  const CMatrix proj = eig.phase_projector(delta);
  const double imag = model.dimension_ ? proj.imag().cwiseAbs().maxCoeff() : 0.0;
  if (imag > 1e-6) {
    throw NumericsError("phase projector is not real; eigenphases straddle the bin edge");
  }
  model.dense_projector_ = proj.real();
  return model;
}

PhaseEstimationModel PhaseEstimationModel::from_star_states(const StarStateSet& states,
                                                            double delta) {
  check_delta(delta);
  PhaseEstimationModel model;
  model.delta_ = delta;
  model.route_ = SpectralRoute::kPrincipalAngles;
  model.dimension_ = states.dimension;
  model.phi_ = states.col_basis;
  model.psi_ = states.row_basis;

  const Index k_cols = model.phi_.cols();
  const Index k_rows = model.psi_.cols();
  const Matrix overlap = Matrix(SparseMatrix(model.phi_.transpose() * model.psi_));
  Eigen::BDCSVD<Matrix> dec(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (dec.info() != Eigen::Success) throw NumericsError("overlap svd did not converge");
  const Vector cosines = dec.singularValues();
  const Matrix& left = dec.matrixU();
  const Matrix& right = dec.matrixV();
  const Index paired = std::min(k_cols, k_rows);

  std::vector<Index> col_keep;
  std::vector<Index> row_keep;
  std::vector<Index> pair_keep;
  std::vector<double> phase_list;
  for (Index k = 0; k < paired; ++k) {
    const double c = std::min(1.0, cosines(k));
    const double phase = 2.0 * std::asin(c);
    if (c >= 1.0 - 1e-14) {
      phase_list.push_back(std::numbers::pi);
      continue;
    }
    phase_list.push_back(phase);
    phase_list.push_back(-phase);
    if (phase <= delta) {
      col_keep.push_back(k);
      pair_keep.push_back(k);
    }
  }
  for (Index k = paired; k < k_cols; ++k) {
    col_keep.push_back(k);
    phase_list.push_back(0.0);
  }
  for (Index k = paired; k < k_rows; ++k) {
    row_keep.push_back(k);
    phase_list.push_back(0.0);
  }
  while (static_cast<Index>(phase_list.size()) < model.dimension_) {
    phase_list.push_back(std::numbers::pi);
  }
  model.phases_ = Eigen::Map<Vector>(phase_list.data(), phase_list.size());

  model.col_dirs_ = gather_columns(left, col_keep);
  model.row_dirs_ = gather_columns(right, row_keep);
  model.pair_col_ = gather_columns(left, pair_keep);
  model.pair_row_ = gather_columns(right, pair_keep);
  model.pair_row_scale_.resize(pair_keep.size());
  model.pair_col_scale_.resize(pair_keep.size());
  for (std::size_t k = 0; k < pair_keep.size(); ++k) {
    const double c = cosines(pair_keep[k]);
    const double s = std::sqrt(1.0 - c * c);
    model.pair_row_scale_(k) = 1.0 / s;
    model.pair_col_scale_(k) = c / s;
  }
  return model;
}

Vector PhaseEstimationModel::project(const Vector& v) const {
  if (v.size() != dimension_) throw NumericsError("state dimension mismatch");
  if (route_ == SpectralRoute::kDenseEigensystem) return dense_projector_ * v;
  const Vector on_cols = phi_.transpose() * v;
  const Vector on_rows = psi_.transpose() * v;
  // Each kept pair contributes alpha and the unit vector
  // (beta - c alpha)/sqrt(1-c^2); alpha is already in col_dirs_.
  const Vector pair_coeff =
      pair_row_scale_.cwiseProduct(pair_row_.transpose() * on_rows) -
      pair_col_scale_.cwiseProduct(pair_col_.transpose() * on_cols);
  const Vector col_part = col_dirs_ * (col_dirs_.transpose() * on_cols) -
                          pair_col_ * pair_col_scale_.cwiseProduct(pair_coeff);
  const Vector row_part = row_dirs_ * (row_dirs_.transpose() * on_rows) +
                          pair_row_ * pair_row_scale_.cwiseProduct(pair_coeff);
  return phi_ * col_part + psi_ * row_part;
}

Matrix PhaseEstimationModel::projector() const {
  if (route_ == SpectralRoute::kDenseEigensystem) return dense_projector_;
  Matrix out(dimension_, dimension_);
  for (Index k = 0; k < dimension_; ++k) {
    out.col(k) = project(Vector::Unit(dimension_, k));
  }
  return out;
}

PhaseProjection phase_project(const PhaseEstimationModel& model, const Vector& state) {
  if (std::abs(state.norm() - 1.0) > 1e-8) {
    throw NumericsError("phase_project expects a unit-norm state");
  }
  const Vector projected = model.project(state);
  PhaseProjection out;
  out.prob_zero = projected.squaredNorm();
  if (out.prob_zero > 1e-14) out.post_state = projected / std::sqrt(out.prob_zero);
  return out;
}

Vector collapse_to_columns(const Vector& edge_state, const StarStateSet& states) {
  if (edge_state.size() != states.dimension) {
    throw NumericsError("edge state dimension mismatch");
  }
  Vector out = Vector::Zero(states.num_cols);
  Vector rest = edge_state;
  for (Index j = 0; j < states.num_cols; ++j) {
    if (states.col_slot[j] < 0) continue;
    const Vector phi = states.phi(j);
    out(j) = phi.dot(edge_state);
    rest -= out(j) * phi;
  }
  const double scale = std::max(1.0, edge_state.norm());
  if (rest.norm() > 1e-8 * scale) {
    std::ostringstream os;
    os << "state has weight " << rest.norm() << " outside span{Phi_j}";
    throw NumericsError(os.str());
  }
  return out;
}

std::uint64_t repetition_cap(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw NumericsError("repetition cap needs gamma in (0, 1)");
  }
  return static_cast<std::uint64_t>(
      std::ceil(48.0 * (1.0 / gamma + 1.0 / (1.0 - gamma)) * std::log(100.0)));
}

QlsRun run_qls(const AugmentedSystem& input, const QlsOptions& options) {
  if (!(options.epsilon > 0.0 && options.epsilon < 1.0)) {
    throw NumericsError("epsilon must lie in (0, 1)");
  }
  AugmentedSystem rescaled;
  const AugmentedSystem* sys = &input;
  if (options.norm_known) {
    const double y_norm = min_norm_solve(input.a, input.b).norm();
    rescaled = build_augmented(input.a, input.b / y_norm);
    sys = &rescaled;
  }
  const InstanceMetrics metrics = compute_metrics(*sys);
  const WalkGraph graph = build_walk_graph(*sys);
  const StarStateSet states = build_star_states(graph, *sys);
  const CanonicalStates canon = canonical_states(states, metrics);
  const Vector phi_b = states.phi_b();

  QlsRun run;
  run.backend = "walk";
  run.epsilon = options.epsilon;
  run.norm_known = options.norm_known;
  run.seed = options.seed;
  run.gamma = metrics.gamma;
  run.null_overlap = metrics.null_overlap();
  run.y_norm_sq = metrics.y_norm_sq;
  run.et = metrics.et;
  run.sparsity = sys->sparsity;
  run.kappa_a = metrics.kappa_a;
  run.kappa_h = metrics.kappa_h;
  run.p_b_norm = canon.p_b.norm();
  const double eg = options.epsilon * metrics.gamma;
  run.delta = options.delta_override > 0.0
                  ? options.delta_override
                  : options.precision_constant * eg * eg /
                        std::sqrt(static_cast<double>(sys->sparsity) * metrics.et);
  run.delta_state_prep = options.epsilon * options.epsilon /
                         ((1.0 + metrics.y_norm_sq) * run.p_b_norm);
  run.exact_state = metrics.y / metrics.y.norm();

  const PhaseEstimationModel model =
      options.route == SpectralRoute::kDenseEigensystem
          ? PhaseEstimationModel::from_operator(build_walk_operator(states), run.delta)
          : PhaseEstimationModel::from_star_states(states, run.delta);
  const PhaseProjection proj = phase_project(model, phi_b);
  run.phase_zero_probability = proj.prob_zero;

  Vector final_state;
  if (proj.post_state) {
    const double on_b = phi_b.dot(*proj.post_state);
    run.measurement_success_probability = std::max(0.0, 1.0 - on_b * on_b);
    final_state = *proj.post_state - on_b * phi_b;
  }
  run.round_success_probability =
      run.phase_zero_probability * run.measurement_success_probability;
  run.repetition_cap = repetition_cap(metrics.gamma);

  std::mt19937_64 rng(options.seed);
  bool success = false;
  while (!success && run.rounds < run.repetition_cap) {
    ++run.rounds;
    if (uniform01(rng) >= run.phase_zero_probability) continue;
    ++run.phase_zero_count;
    if (uniform01(rng) >= run.measurement_success_probability) continue;
    ++run.measurement_success_count;
    success = true;
  }
  if (!success) {
    std::ostringstream os;
    os << "no success within " << run.repetition_cap << " rounds (phase-zero "
       << run.phase_zero_count << "/" << run.rounds << ", measurement "
       << run.measurement_success_count << "/" << run.phase_zero_count << ")";
    throw RepetitionCapError(os.str(), run);
  }
  const Vector columns = collapse_to_columns(final_state / final_state.norm(), states);
  run.output_state = columns / columns.norm();
  run.trace_distance = trace_distance(run.output_state, run.exact_state);
  return run;
}

}  // namespace qlswalk
