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

#include "qlswalk/system_model.h"

#include <algorithm>
#include <cmath>

namespace qlswalk {

AugmentedSystem build_augmented(Matrix a, Vector b) {
  if (a.rows() != b.size()) {
    throw NumericsError("A has " + std::to_string(a.rows()) + " rows but b has " +
                        std::to_string(b.size()) + " entries");
  }
  if (a.rows() == 0 || a.cols() == 0) throw NumericsError("empty system");
  require_finite(a, "A");
  require_finite(b, "b");
  if ((b.array() == 0.0).all()) {
    throw NumericsError("b is identically zero; the walk needs a b vertex with edges");
  }
  AugmentedSystem sys;
  const Index m = a.rows();
  const Index n = a.cols();
  sys.h.resize(m, n + 1);
  sys.h.leftCols(n) = a;
  sys.h.col(n) = -b;
  sys.a = std::move(a);
  sys.b = std::move(b);

  sys.row_nnz.assign(m, 0);
  sys.col_nnz.assign(n + 1, 0);
  for (Index j = 0; j <= n; ++j) {
    for (Index i = 0; i < m; ++i) {
      if (sys.h(i, j) != 0.0) {
        ++sys.row_nnz[i];
        ++sys.col_nnz[j];
      }
    }
  }
  sys.sparsity = std::max(*std::max_element(sys.row_nnz.begin(), sys.row_nnz.end()),
                          *std::max_element(sys.col_nnz.begin(), sys.col_nnz.end()));
  sys.row_sq_norms = sys.h.rowwise().squaredNorm();
  return sys;
}

InstanceMetrics compute_metrics(const AugmentedSystem& sys) {
  InstanceMetrics out;
  // One factorization of A serves y = A^+ b and p = (A A^T)^+ b = U S^-2 U^T b.
  const SvdFactorization f = svd(sys.a);
  out.y = min_norm_solve(f, sys.b);
  const Index r = f.rank;
  const Vector proj = f.u.leftCols(r).transpose() * sys.b;
  out.p = f.u.leftCols(r) *
          proj.cwiseQuotient(f.singular_values.head(r).cwiseAbs2());
  out.y_norm_sq = out.y.squaredNorm();
  out.et = out.p.cwiseAbs2().dot(sys.row_sq_norms);
  out.kappa_a = f.condition_number();
  out.kappa_h = condition_number(sys.h);
  out.gamma = out.y_norm_sq / (1.0 + out.y_norm_sq);
  return out;
}

double DecompositionReport::max_residual() const {
  return std::max({split_residual, kernel_residual, row_space_residual,
                   orthogonality_residual});
}

DecompositionReport verify_vector_decomposition(const AugmentedSystem& sys,
                                                const InstanceMetrics& metrics) {
  const Index n = sys.cols();
  DecompositionReport rep;
  rep.theta.resize(n + 1);
  rep.theta.head(n) = metrics.y;
  rep.theta(n) = 1.0;
  rep.theta_perp.resize(n + 1);
  rep.theta_perp.head(n) = metrics.y;
  rep.theta_perp(n) = -metrics.y_norm_sq;

  Vector psi0 = Vector::Zero(n + 1);
  psi0(n) = 1.0;
  rep.split_residual =
      (psi0 - (rep.theta - rep.theta_perp) / (1.0 + metrics.y_norm_sq)).norm();
  rep.kernel_residual = (sys.h * rep.theta).norm();
  rep.row_space_residual = (rep.theta_perp - sys.h.transpose() * metrics.p).norm();
  rep.orthogonality_residual = std::abs(rep.theta.dot(rep.theta_perp));
  return rep;
}

AugmentedSystem normalize_for_condition_bounds(const AugmentedSystem& sys) {
  const double a_norm = singular_values(sys.a)(0);
  if (a_norm == 0.0) throw NumericsError("condition bounds of a zero matrix");
  Matrix a = sys.a / a_norm;
  const Vector y = min_norm_solve(a, sys.b);
  const double y_norm = y.norm();
  Vector b = sys.b / y_norm;
  return build_augmented(std::move(a), std::move(b));
}

ConditionRelation condition_number_relation(const AugmentedSystem& sys, bool normalize,
                                            double relative_slack) {
  const AugmentedSystem work = normalize ? normalize_for_condition_bounds(sys) : sys;
  ConditionRelation rel;
  rel.kappa_a = condition_number(work.a);
  rel.kappa_h = condition_number(work.h);
  const double lo = 0.5 * rel.kappa_a * (1.0 - relative_slack);
  const double hi = std::sqrt(2.0) * rel.kappa_a * (1.0 + relative_slack);
  rel.in_bounds = rel.kappa_h >= lo && rel.kappa_h <= hi;
  return rel;
}

}  // namespace qlswalk
