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

#ifndef QLSWALK_WALK_H_
#define QLSWALK_WALK_H_

#include <ostream>
#include <vector>

#include <Eigen/Sparse>

#include "qlswalk/numerics.h"
#include "qlswalk/system_model.h"

namespace qlswalk {

using SparseMatrix = Eigen::SparseMatrix<double>;

// Edge {u_row, v_col}; col == num_cols denotes the b vertex.
struct WalkEdge {
  Index row = 0;
  Index col = 0;
  double weight = 0.0;
};

struct WalkGraph {
  Index num_rows = 0;
  Index num_cols = 0;  // columns of A; the b vertex has index num_cols
  std::vector<WalkEdge> edges;            // sorted by (row, col)
  std::vector<int> col_degree;            // |N(v_j)|, b last
  Vector row_degree;                      // weighted degree of u_i
  std::vector<std::vector<Index>> row_edges;
  std::vector<std::vector<Index>> col_edges;

  Index b_vertex() const { return num_cols; }
  Index dimension() const { return static_cast<Index>(edges.size()); }
  // Basis index of edge (row, col), or -1 when absent.
  Index edge_index(Index row, Index col) const;
};

WalkGraph build_walk_graph(const AugmentedSystem& sys);

// One line per edge: row, column (or "b"), weight.
void write_edge_list(std::ostream& os, const WalkGraph& g);

struct StarStateSet {
  Index dimension = 0;
  Index num_rows = 0;
  Index num_cols = 0;
  // Columns are the row stars Psi_i for rows with at least one nonzero.
  SparseMatrix row_basis;
  // Columns are the column stars Phi_j for nonzero columns, then Phi_b last.
  SparseMatrix col_basis;
  std::vector<Index> row_slot;  // row -> column of row_basis, -1 if none
  std::vector<Index> col_slot;  // column (b last) -> column of col_basis, -1 if none
  Vector row_degree;            // copied from the graph

  Vector psi(Index row) const;
  Vector phi(Index col) const;
  Vector phi_b() const { return phi(num_cols); }
  // Pi_A v = v - sum_j Phi_j Phi_j^T v, and Pi_B v = sum_i Psi_i Psi_i^T v.
  Vector apply_pi_a(const Vector& v) const;
  Vector apply_pi_b(const Vector& v) const;
  // (2 Pi_A - I)(2 Pi_B - I) v without forming the dense operator.
  Vector apply_walk(const Vector& v) const;
};

StarStateSet build_star_states(const WalkGraph& g, const AugmentedSystem& sys);

struct WalkOperator {
  Matrix pi_a;
  Matrix pi_b;
  Matrix u;
  Index dimension() const { return u.rows(); }
};

// Dense operators; refuses edge spaces larger than max_dimension.
WalkOperator build_walk_operator(const StarStateSet& states,
                                 Index max_dimension = 4096);

struct CanonicalStates {
  Vector theta_star;  // unit norm, fixed by the walk
  Vector p_b;         // potential state, not normalized
};

CanonicalStates canonical_states(const StarStateSet& states,
                                 const InstanceMetrics& metrics);

struct WalkIdentityReport {
  double decomposition_residual = 0.0;  // |Phi_b - theta*/sqrt(1+|y|^2) + (I-Pi_A) p_B|
  double fixed_point_residual = 0.0;    // |U theta* - theta*|
  double projection_residual = 0.0;     // |Pi_B p_B - p_B|
  double max_residual() const;
};

WalkIdentityReport verify_walk_identities(const StarStateSet& states, const WalkOperator& op,
                          const InstanceMetrics& metrics, const Vector& phi_b);
// Same checks with the operators applied through the star states.
WalkIdentityReport verify_walk_identities(const StarStateSet& states, const InstanceMetrics& metrics);

}  // namespace qlswalk

#endif  // QLSWALK_WALK_H_
