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

#ifndef QLSWALK_SYSTEM_MODEL_H_
#define QLSWALK_SYSTEM_MODEL_H_

#include <vector>

#include "qlswalk/numerics.h"

namespace qlswalk {

// A y = b stored together with the augmented matrix H = [A, -b].
struct AugmentedSystem {
  Matrix a;
  Vector b;
  Matrix h;
  std::vector<int> row_nnz;  // nonzeros per row of H
  std::vector<int> col_nnz;  // nonzeros per column of H, b column last
  int sparsity = 0;
  Vector row_sq_norms;       // |H_i|^2

  Index rows() const { return a.rows(); }
  Index cols() const { return a.cols(); }
};

AugmentedSystem build_augmented(Matrix a, Vector b);

struct InstanceMetrics {
  Vector y;  // min-norm solution of A y = b
  Vector p;  // (A A^T)^+ b
  double y_norm_sq = 0.0;
  double et = 0.0;
  double kappa_a = 0.0;
  double kappa_h = 0.0;
  // |y|^2 / (1 + |y|^2), the weight of the solution part of [y; 1].
  double gamma = 0.0;

  // 1 / (1 + |y|^2), the squared overlap of e_{N+1} with the kernel of H.
  double null_overlap() const { return 1.0 / (1.0 + y_norm_sq); }
};

// Throws InconsistentSystemError when b is outside col(A).
InstanceMetrics compute_metrics(const AugmentedSystem& sys);

struct DecompositionReport {
  Vector theta;       // [y; 1]
  Vector theta_perp;  // [y; -|y|^2]
  double split_residual = 0.0;        // |e_{N+1} - (theta - theta_perp)/(1+|y|^2)|
  double kernel_residual = 0.0;       // |H theta|
  double row_space_residual = 0.0;    // |theta_perp - H^T p|
  double orthogonality_residual = 0.0;  // |theta . theta_perp|

  double max_residual() const;
};

DecompositionReport verify_vector_decomposition(const AugmentedSystem& sys,
                                                const InstanceMetrics& metrics);

struct ConditionRelation {
  double kappa_a = 0.0;
  double kappa_h = 0.0;
  bool in_bounds = false;
};

// Rescales to |A| = 1 and then b so that |y| = 1, which implies |b| <= 1.
AugmentedSystem normalize_for_condition_bounds(const AugmentedSystem& sys);

// Checks kappa(A)/2 <= kappa(H) <= sqrt(2) kappa(A); endpoints are relaxed by
// relative_slack.
ConditionRelation condition_number_relation(const AugmentedSystem& sys,
                                            bool normalize = true,
                                            double relative_slack = 0.0);

}  // namespace qlswalk

#endif  // QLSWALK_SYSTEM_MODEL_H_
