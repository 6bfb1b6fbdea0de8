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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.h"
#include "qlswalk/instances.h"

namespace qlswalk {
namespace {

AugmentedSystem identity_e1() {
  return build_augmented(Matrix::Identity(2, 2), Vector::Unit(2, 0));
}

TEST(BuildAugmented, DisplayedThreeByThreeExample) {
  const Matrix a{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
  const Vector b{{-1, 0, -1}};
  const AugmentedSystem sys = build_augmented(a, b);
  const Matrix expected{{1, 1, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 1}};
  EXPECT_EQ(sys.h, expected);
  EXPECT_EQ(sys.sparsity, 3);
  EXPECT_EQ(sys.col_nnz, (std::vector<int>{1, 2, 1, 2}));
}

TEST(BuildAugmented, IdentityBlock) {
  const AugmentedSystem sys = identity_e1();
  EXPECT_EQ(sys.h, (Matrix{{1, 0, -1}, {0, 1, 0}}));
  EXPECT_EQ(sys.sparsity, 2);
  EXPECT_DOUBLE_EQ(sys.row_sq_norms(0), 2.0);
  EXPECT_DOUBLE_EQ(sys.row_sq_norms(1), 1.0);
}

TEST(BuildAugmented, DiagonalExampleLastRowNorm) {
  const AugmentedSystem sys = make_diagonal_example(4);
  EXPECT_DOUBLE_EQ(sys.row_sq_norms(3), 2.0 / 16.0);
}

TEST(BuildAugmented, RejectsBadInput) {
  EXPECT_THROW(build_augmented(Matrix::Identity(2, 2), Vector::Zero(2)), NumericsError);
  EXPECT_THROW(build_augmented(Matrix::Identity(2, 2), Vector::Ones(3)), NumericsError);
  Matrix a = Matrix::Identity(2, 2);
  a(0, 1) = INFINITY;
  EXPECT_THROW(build_augmented(a, Vector::Ones(2)), NumericsError);
}

TEST(Metrics, IdentityCase) {
  const InstanceMetrics m = compute_metrics(identity_e1());
  EXPECT_LE((m.y - Vector::Unit(2, 0)).norm(), 1e-15);
  EXPECT_LE((m.p - Vector::Unit(2, 0)).norm(), 1e-15);
  EXPECT_NEAR(m.et, 2.0, 1e-15);
  EXPECT_NEAR(m.gamma, 0.5, 1e-15);
  EXPECT_NEAR(m.null_overlap(), 0.5, 1e-15);
}

TEST(Metrics, DiagonalExampleHasConstantEt) {
  for (int n = 2; n <= 64; n *= 2) {
    const InstanceMetrics m = compute_metrics(make_diagonal_example(n));
    EXPECT_NEAR(m.et, 2.0, 1e-9) << n;
    EXPECT_NEAR(m.kappa_a, n, 1e-9 * n) << n;
  }
}

TEST(Metrics, AgreesWithIndependentSolves) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::mt19937_64 rng(seed);
    const Index rows = 3 + static_cast<Index>(seed % 8);
    const Index cols = 2 + static_cast<Index>(seed % 5);
    const Index rank = 1 + static_cast<Index>(seed % std::min(rows, cols));
    const Matrix a = testing::low_rank_matrix(rows, cols, rank, rng);
    const Vector b = a * testing::gaussian_vector(cols, rng);
    const AugmentedSystem sys = build_augmented(a, b);
    const InstanceMetrics m = compute_metrics(sys);

    EXPECT_LE((m.y - testing::cod_solve(a, b)).norm(), 1e-8 * m.y.norm());
    const Matrix aat = a * a.transpose();
    EXPECT_LE((m.p - pseudoinverse_apply(aat, b)).norm(), 1e-6 * m.p.norm());
    EXPECT_LE((m.p - testing::cod_solve(aat, b)).norm(), 1e-6 * m.p.norm());

    double et = 0.0;
    for (Index i = 0; i < rows; ++i) et += m.p(i) * m.p(i) * sys.h.row(i).squaredNorm();
    EXPECT_NEAR(m.et, et, 1e-10 * et);
    EXPECT_NEAR(m.gamma, m.y_norm_sq / (1 + m.y_norm_sq), 1e-15);
    EXPECT_NEAR(m.kappa_h, testing::eig_condition(sys.h), 1e-6 * m.kappa_h);

    // p^T b = |y|^2 and Cauchy-Schwarz |p||b| >= |y|^2.
    EXPECT_NEAR(m.p.dot(b), m.y_norm_sq, 1e-8 * m.y_norm_sq);
    EXPECT_GE(m.p.norm() * b.norm() * (1 + 1e-12), m.y_norm_sq);
    EXPECT_GE(m.et, 0.0);
  }
}

TEST(Metrics, NormalizedEtIsAtMostTwicePotentialNorm) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const AugmentedSystem raw = make_random_consistent(9, 5, 0.6, seed);
    const double scale = svd(raw.a).sigma_max();
    const AugmentedSystem sys =
        build_augmented(raw.a / scale, raw.b / raw.b.norm());
    const InstanceMetrics m = compute_metrics(sys);
    EXPECT_LE(m.et, 2.0 * m.p.squaredNorm() * (1 + 1e-12));
  }
}

TEST(Metrics, InconsistentSystemThrows) {
  const Matrix a{{1, 0}, {0, 1}, {0, 0}};
  EXPECT_THROW(compute_metrics(build_augmented(a, Vector{{0, 0, 1}})), InconsistentSystemError);
}

TEST(Decomposition, IdentityCase) {
  const AugmentedSystem sys = identity_e1();
  const DecompositionReport r = verify_vector_decomposition(sys, compute_metrics(sys));
  EXPECT_LE((r.theta - Vector{{1, 0, 1}}).norm(), 1e-15);
  EXPECT_LE((r.theta_perp - Vector{{1, 0, -1}}).norm(), 1e-15);
  EXPECT_LE(r.max_residual(), 1e-12);
}

TEST(Decomposition, DiagonalExampleTheta) {
  const AugmentedSystem sys = make_diagonal_example(5);
  const DecompositionReport r = verify_vector_decomposition(sys, compute_metrics(sys));
  Vector expected = Vector::Zero(6);
  expected(4) = 1.0;
  expected(5) = 1.0;
  EXPECT_LE((r.theta - expected).norm(), 1e-14);
}

TEST(Decomposition, RandomSystemsSatisfyAllIdentities) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const AugmentedSystem sys = make_random_consistent(8, 5, 0.5, seed);
    const DecompositionReport r = verify_vector_decomposition(sys, compute_metrics(sys));
    EXPECT_LE(r.max_residual(), 1e-8) << seed;
  }
}

TEST(Decomposition, UniqueUnderKernelPerturbation) {
  // Any kernel vector of H with last entry 1 differs from [y; 1] by a kernel
  // vector of A; removing that part restores theta.
  std::mt19937_64 rng(3);
  const Matrix a = testing::low_rank_matrix(4, 6, 3, rng);
  const Vector b = a * testing::gaussian_vector(6, rng);
  const AugmentedSystem sys = build_augmented(a, b);
  const InstanceMetrics m = compute_metrics(sys);
  const DecompositionReport r = verify_vector_decomposition(sys, m);
  const Matrix null_a = svd(a, kRankTolerance, SvdVectors::kFull).null_space_basis();
  for (Index k = 0; k < null_a.cols(); ++k) {
    Vector shifted = r.theta;
    shifted.head(6) += 0.7 * null_a.col(k);
    EXPECT_LE((sys.h * shifted).norm(), 1e-9);
    Vector y = shifted.head(6);
    y -= null_a * (null_a.transpose() * y);
    EXPECT_LE((y - m.y).norm(), 1e-8);
  }
}

TEST(ConditionRelation, IdentityIsInBracket) {
  const ConditionRelation rel = condition_number_relation(identity_e1());
  EXPECT_NEAR(rel.kappa_a, 1.0, 1e-12);
  EXPECT_GE(rel.kappa_h, 0.5);
  EXPECT_LE(rel.kappa_h, std::sqrt(2.0));
  EXPECT_TRUE(rel.in_bounds);
}

TEST(ConditionRelation, NormalizationHypotheses) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const AugmentedSystem n = normalize_for_condition_bounds(make_random_consistent(10, 6, 0.7, seed));
    EXPECT_NEAR(svd(n.a).sigma_max(), 1.0, 1e-12);
    EXPECT_NEAR(compute_metrics(n).y.norm(), 1.0, 1e-10);
    EXPECT_LE(n.b.norm(), 1.0 + 1e-12);
    EXPECT_TRUE(condition_number_relation(n, false, 1e-6).in_bounds) << seed;
  }
}

}  // namespace
}  // namespace qlswalk
