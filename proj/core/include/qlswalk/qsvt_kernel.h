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

#ifndef QLSWALK_QSVT_KERNEL_H_
#define QLSWALK_QSVT_KERNEL_H_

#include <cstdint>

#include "qlswalk/numerics.h"
#include "qlswalk/qpe_sim.h"
#include "qlswalk/system_model.h"

namespace qlswalk {

// F(x) = T_l((1 + g^2 - 2x^2)/(1 - g^2)) / T_l((1 + g^2)/(1 - g^2)) for gap g.
// F(0) = 1, |F| <= 1 on [-1, 1] and |F| <= 1/T_l((1+g^2)/(1-g^2)) on [g, 1].
struct MinimaxPoly {
  double gap = 0.0;
  int degree = 0;
  double eta = 0.0;  // requested tail bound; 0 when built from a degree

  double tail_bound() const;
};

// Smallest degree whose tail bound is at most eta.
int minimax_degree(double gap, double eta);
MinimaxPoly make_minimax_poly(double gap, double eta);
MinimaxPoly make_minimax_poly_with_degree(double gap, int degree);

// Log-domain evaluation, stable for large degrees. Throws for |x| > 1.
double eval_F(const MinimaxPoly& poly, double x);

// F(H) state through the SVD of H / |H|. Throws when a nonzero singular value
// of the normalized matrix lies below the gap.
Vector apply_F_to_matrix(const MinimaxPoly& poly, const Matrix& h, const Vector& state);

// eps^2 sqrt(g) / (2 sqrt(1-g) (1-eps^2)) with g the kernel overlap of e_{N+1}.
double kernel_eta(double epsilon, double null_overlap);

QlsRun run_kernel_qls(const AugmentedSystem& sys, double epsilon, std::uint64_t seed);

}  // namespace qlswalk

#endif  // QLSWALK_QSVT_KERNEL_H_
