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

#include "qlswalk/walk.h"

#include <gtest/gtest.h>

#include <sstream>

#include "qlswalk/instances.h"

namespace qlswalk {
namespace {

AugmentedSystem displayed_example() {
  return build_augmented(Matrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}, Vector{{-1, 0, -1}});
}

struct Built {
  AugmentedSystem sys;
  InstanceMetrics metrics;
  WalkGraph graph;
  StarStateSet states;
};

Built build(AugmentedSystem sys) {
  Built b{std::move(sys), {}, {}, {}};
  b.metrics = compute_metrics(b.sys);
  b.graph = build_walk_graph(b.sys);
  b.states = build_star_states(b.graph, b.sys);
  return b;
}

TEST(WalkGraph, DisplayedExampleEdgesAndWeights) {
  const WalkGraph g = build_walk_graph(displayed_example());
  ASSERT_EQ(g.dimension(), 6);
  const Index b = g.b_vertex();
  const std::vector<std::pair<Index, Index>> expected{{0, 0}, {0, 1}, {0, b},
                                                      {1, 1}, {2, 2}, {2, b}};
  for (std::size_t k = 0; k < expected.size(); ++k) {
    EXPECT_EQ(g.edges[k].row, expected[k].first);
    EXPECT_EQ(g.edges[k].col, expected[k].second);
  }
  // weight = entry^2 * |N(column)|
  EXPECT_DOUBLE_EQ(g.edges[g.edge_index(0, 0)].weight, 1.0);
  EXPECT_DOUBLE_EQ(g.edges[g.edge_index(0, 1)].weight, 2.0);
  EXPECT_DOUBLE_EQ(g.edges[g.edge_index(1, 1)].weight, 2.0);
  EXPECT_DOUBLE_EQ(g.edges[g.edge_index(0, b)].weight, 2.0);
  EXPECT_DOUBLE_EQ(g.edges[g.edge_index(2, b)].weight, 2.0);
  EXPECT_EQ(g.edge_index(1, 0), -1);
  EXPECT_EQ(g.col_degree, (std::vector<int>{1, 2, 1, 2}));
}

TEST(WalkGraph, IdentityDegrees) {
  const WalkGraph g = build_walk_graph(build_augmented(Matrix::Identity(2, 2), Vector::Unit(2, 0)));
  EXPECT_EQ(g.dimension(), 3);
  EXPECT_DOUBLE_EQ(g.row_degree(0), 2.0);
  EXPECT_DOUBLE_EQ(g.row_degree(1), 1.0);
}

TEST(WalkGraph, RowDegreeAtMostSparsityTimesRowNorm) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const AugmentedSystem sys = make_random_consistent(9, 6, 0.5, seed);
    const WalkGraph g = build_walk_graph(sys);
    for (Index i = 0; i < sys.rows(); ++i) {
      EXPECT_LE(g.row_degree(i), sys.sparsity * sys.row_sq_norms(i) * (1 + 1e-12));
    }
  }
}

TEST(WalkGraph, ZeroRowsAndColumnsHaveNoEdges) {
  const Matrix a{{1, 0, 0}, {0, 0, 0}, {0, 0, 2}};
  const WalkGraph g = build_walk_graph(build_augmented(a, Vector{{1, 0, 2}}));
  EXPECT_TRUE(g.row_edges[1].empty());
  EXPECT_TRUE(g.col_edges[1].empty());
  EXPECT_EQ(g.dimension(), 4);
}

TEST(WalkGraph, EdgeListExport) {
  std::ostringstream os;
  write_edge_list(os, build_walk_graph(build_augmented(Matrix::Identity(1, 1), Vector::Ones(1))));
  EXPECT_EQ(os.str(), "0 0 1\n0 b 1\n");
}

TEST(StarStates, OrthonormalAndSigned) {
  const Built b = build(displayed_example());
  const Matrix psi = Matrix(b.states.row_basis);
  const Matrix phi = Matrix(b.states.col_basis);
  EXPECT_LE((psi.transpose() * psi - Matrix::Identity(psi.cols(), psi.cols())).norm(), 1e-14);
  EXPECT_LE((phi.transpose() * phi - Matrix::Identity(phi.cols(), phi.cols())).norm(), 1e-14);
  // Psi_0 carries H's sign on the b edge: H(0, b) = -b_0 = +1.
  const Vector psi0 = b.states.psi(0);
  EXPECT_GT(psi0(b.graph.edge_index(0, b.graph.b_vertex())), 0.0);
  const Vector phib = b.states.phi_b();
  EXPECT_NEAR(phib.norm(), 1.0, 1e-15);
}

TEST(WalkOperator, SmallestInstanceIsUnitary) {
  const Built b = build(build_augmented(Matrix::Identity(1, 1), Vector::Ones(1)));
  const WalkOperator op = build_walk_operator(b.states);
  ASSERT_EQ(op.dimension(), 2);
  EXPECT_LE((op.u.transpose() * op.u - Matrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(WalkOperator, RandomSystemIsOrthogonal) {
  const Built b = build(make_random_consistent(6, 4, 0.7, 9));
  const WalkOperator op = build_walk_operator(b.states);
  const Index d = op.dimension();
  EXPECT_LE((op.u.transpose() * op.u - Matrix::Identity(d, d)).norm(), 1e-10);
  EXPECT_LE((op.pi_a * op.pi_a - op.pi_a).norm(), 1e-12);
  EXPECT_LE((op.pi_b * op.pi_b - op.pi_b).norm(), 1e-12);
  // Matrix-free application matches the dense operator.
  Vector v = Vector::LinSpaced(d, -1.0, 2.0);
  EXPECT_LE((b.states.apply_walk(v) - op.u * v).norm(), 1e-12 * v.norm());
  EXPECT_LE((b.states.apply_pi_a(v) - op.pi_a * v).norm(), 1e-12 * v.norm());
  EXPECT_LE((b.states.apply_pi_b(v) - op.pi_b * v).norm(), 1e-12 * v.norm());
}

TEST(WalkOperator, RefusesOversizedSpace) {
  const Built b = build(make_random_consistent(6, 4, 0.7, 9));
  EXPECT_THROW(build_walk_operator(b.states, 3), NumericsError);
}

TEST(CanonicalStates, DiagonalExampleFixedPoint) {
  const Built b = build(make_diagonal_example(3));
  const WalkOperator op = build_walk_operator(b.states);
  const CanonicalStates cs = canonical_states(b.states, b.metrics);
  EXPECT_NEAR(cs.theta_star.norm(), 1.0, 1e-14);
  EXPECT_LE((op.u * cs.theta_star - cs.theta_star).norm(), 1e-10);
}

TEST(CanonicalStates, ColumnBasisOverlapsMatchSolution) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Built b = build(make_random_consistent(8, 5, 0.6, seed));
    const CanonicalStates cs = canonical_states(b.states, b.metrics);
    const double norm = 1.0 + b.metrics.y_norm_sq;
    for (Index j = 0; j < b.sys.cols(); ++j) {
      if (b.states.col_slot[static_cast<std::size_t>(j)] < 0) continue;
      const double amp = b.states.phi(j).dot(cs.theta_star);
      EXPECT_NEAR(amp * amp, b.metrics.y(j) * b.metrics.y(j) / norm, 1e-10);
    }
    const double amp_b = b.states.phi_b().dot(cs.theta_star);
    EXPECT_NEAR(amp_b * amp_b, 1.0 / norm, 1e-10);
  }
}

TEST(WalkIdentities, IdentityResidualsAreTiny) {
  const Built b = build(build_augmented(Matrix::Identity(2, 2), Vector::Unit(2, 0)));
  const WalkOperator op = build_walk_operator(b.states);
  EXPECT_LE(verify_walk_identities(b.states, op, b.metrics, b.states.phi_b()).max_residual(), 1e-12);
  EXPECT_LE(verify_walk_identities(b.states, b.metrics).max_residual(), 1e-12);
}

TEST(WalkIdentities, RandomSystems) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Built b = build(make_random_consistent(8, 5, 0.5, seed));
    const WalkOperator op = build_walk_operator(b.states);
    EXPECT_LE(verify_walk_identities(b.states, op, b.metrics, b.states.phi_b()).max_residual(), 1e-8)
        << seed;
    EXPECT_LE(verify_walk_identities(b.states, b.metrics).max_residual(), 1e-8) << seed;
  }
}

TEST(WalkIdentities, WeldedTree) {
  const Built b = build(welded_tree_system(make_welded_tree(3, 1)));
  const WalkOperator op = build_walk_operator(b.states);
  EXPECT_LE(verify_walk_identities(b.states, op, b.metrics, b.states.phi_b()).max_residual(), 1e-8);
}

}  // namespace
}  // namespace qlswalk
