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

#include "qlswalk/qsvt_kernel.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace qlswalk {

namespace {

void check_gap(double gap) {
  if (!(gap > 0.0 && gap < 1.0)) throw NumericsError("minimax gap must lie in (0, 1)");
}

// acosh(1 + t) for t >= 0 without cancellation.
double acosh1p(double t) { return std::log1p(t + std::sqrt(t * (t + 2.0))); }

// Chebyshev argument shifted by one: z - 1 = 2 (g^2 - x^2) / (1 - g^2).
double shifted_argument(double gap, double x) {
  return 2.0 * (gap - x) * (gap + x) / ((1.0 - gap) * (1.0 + gap));
}

double anchor(double gap) { return acosh1p(shifted_argument(gap, 0.0)); }

}  // namespace

double MinimaxPoly::tail_bound() const {
  const double a0 = anchor(gap);
  const double l = static_cast<double>(degree);
  // 1 / cosh(l a0)
  return 2.0 * std::exp(-l * a0) / (1.0 + std::exp(-2.0 * l * a0));
}

int minimax_degree(double gap, double eta) {
  check_gap(gap);
  if (!(eta > 0.0 && eta < 1.0)) throw NumericsError("tail bound must lie in (0, 1)");
  const double l = std::acosh(1.0 / eta) / anchor(gap);
  if (l > 1e8) throw NumericsError("minimax degree exceeds 1e8");
  return std::max(1, static_cast<int>(std::ceil(l)));
}

MinimaxPoly make_minimax_poly(double gap, double eta) {
  MinimaxPoly p;
  p.gap = gap;
  p.eta = eta;
  p.degree = minimax_degree(gap, eta);
  return p;
}

MinimaxPoly make_minimax_poly_with_degree(double gap, int degree) {
  check_gap(gap);
  if (degree < 0) throw NumericsError("minimax degree must be non-negative");
  MinimaxPoly p;
  p.gap = gap;
  p.degree = degree;
  return p;
}

double eval_F(const MinimaxPoly& poly, double x) {
  if (!(std::abs(x) <= 1.0 + 1e-12)) throw NumericsError("eval_F argument outside [-1, 1]");
  x = std::clamp(std::abs(x), 0.0, 1.0);
  const double l = static_cast<double>(poly.degree);
  const double a0 = anchor(poly.gap);
  const double shift = shifted_argument(poly.gap, x);
  const double denom_tail = 1.0 + std::exp(-2.0 * l * a0);
  if (shift >= 0.0) {
    // cosh branch, |x| <= gap
    const double a = acosh1p(shift);
    return std::exp(l * (a - a0)) * (1.0 + std::exp(-2.0 * l * a)) / denom_tail;
  }
  // cos branch; acos(1 + shift) = 2 asin(sqrt(-shift / 2))
  const double half = std::min(1.0, std::sqrt(-0.5 * shift));
  const double theta = 2.0 * std::asin(half);
  return std::cos(l * theta) * 2.0 * std::exp(-l * a0) / denom_tail;
}

Vector apply_F_to_matrix(const MinimaxPoly& poly, const Matrix& h, const Vector& state) {
  if (state.size() != h.cols()) throw NumericsError("state length does not match H");
  const SvdFactorization f = svd(h, kRankTolerance, SvdVectors::kFull);
  const double top = f.sigma_max();
  if (top == 0.0) return state;
  const Index r = f.rank;
  Vector scale(r);
  for (Index k = 0; k < r; ++k) {
    const double sigma = f.singular_values(k) / top;
    if (sigma < poly.gap) {
      std::ostringstream os;
      os << "normalized singular value " << sigma << " lies inside the gap (0, "
         << poly.gap << ")";
      throw NumericsError(os.str());
    }
    scale(k) = eval_F(poly, sigma);
  }
  const Matrix vr = f.v.leftCols(r);
  const Vector coeff = vr.transpose() * state;
  return state - vr * coeff + vr * scale.cwiseProduct(coeff);
}

double kernel_eta(double epsilon, double null_overlap) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw NumericsError("epsilon must lie in (0, 1)");
  if (!(null_overlap > 0.0 && null_overlap < 1.0)) {
    throw NumericsError("kernel overlap must lie in (0, 1)");
  }
  return epsilon * epsilon * std::sqrt(null_overlap) /
         (2.0 * std::sqrt(1.0 - null_overlap) * (1.0 - epsilon * epsilon));
}

QlsRun run_kernel_qls(const AugmentedSystem& sys, double epsilon, std::uint64_t seed) {
  const InstanceMetrics metrics = compute_metrics(sys);
  const Index n = sys.cols();
  QlsRun run;
  run.backend = "kernel";
  run.epsilon = epsilon;
  run.seed = seed;
  run.gamma = metrics.gamma;
  run.null_overlap = metrics.null_overlap();
  run.y_norm_sq = metrics.y_norm_sq;
  run.et = metrics.et;
  run.sparsity = sys.sparsity;
  run.kappa_a = metrics.kappa_a;
  run.kappa_h = metrics.kappa_h;
  run.exact_state = metrics.y / metrics.y.norm();

  KernelDetails kd;
  kd.gap = 0.99 / metrics.kappa_h;
  // A gap at or above one means every nonzero singular value equals |H|.
  kd.gap = std::min(kd.gap, 0.99);
  kd.eta = kernel_eta(epsilon, run.null_overlap);
  // A calibrated bound above 1/2 only arises for tiny |y|; the tighter cap
  // keeps the filter nontrivial.
  const MinimaxPoly poly = make_minimax_poly(kd.gap, std::min(kd.eta, 0.5));
  kd.degree = poly.degree;

  Vector psi0 = Vector::Zero(n + 1);
  psi0(n) = 1.0;
  const Vector filtered = apply_F_to_matrix(poly, sys.h, psi0);
  kd.success_probability = std::min(1.0, filtered.squaredNorm());
  const Vector theta_prime = filtered / filtered.norm();
  Vector theta(n + 1);
  theta.head(n) = metrics.y;
  theta(n) = 1.0;
  theta.normalize();
  kd.theta_distance = (theta_prime - theta).norm();

  run.phase_zero_probability = kd.success_probability;
  run.measurement_success_probability =
      std::max(0.0, 1.0 - theta_prime(n) * theta_prime(n));
  run.round_success_probability =
      run.phase_zero_probability * run.measurement_success_probability;
  run.repetition_cap = repetition_cap(metrics.gamma);
  run.kernel = kd;

  std::mt19937_64 rng(seed);
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
    os << "kernel projection did not succeed within " << run.repetition_cap << " rounds";
    throw RepetitionCapError(os.str(), run);
  }
  const Vector columns = theta_prime.head(n);
  run.output_state = columns / columns.norm();
  run.trace_distance = trace_distance(run.output_state, run.exact_state);
  return run;
}

}  // namespace qlswalk
