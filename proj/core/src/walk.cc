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

#include <algorithm>
#include <cmath>

namespace qlswalk {

Index WalkGraph::edge_index(Index row, Index col) const {
  if (row < 0 || row >= num_rows) return -1;
  const auto& ids = row_edges[row];
  auto it = std::lower_bound(ids.begin(), ids.end(), col,
                             [this](Index e, Index c) { return edges[e].col < c; });
  if (it != ids.end() && edges[*it].col == col) return *it;
  return -1;
}

WalkGraph build_walk_graph(const AugmentedSystem& sys) {
  const Index m = sys.h.rows();
  const Index cols = sys.h.cols();
  if (m == 0 || cols == 0 || (sys.h.array() == 0.0).all()) {
    throw NumericsError("cannot build a walk graph from an empty matrix");
  }
  if (sys.col_nnz.back() == 0) throw NumericsError("b has no nonzero entry");
  WalkGraph g;
  g.num_rows = m;
  g.num_cols = cols - 1;
  g.col_degree = sys.col_nnz;
  g.row_degree = Vector::Zero(m);
  g.row_edges.resize(m);
  g.col_edges.resize(cols);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const double entry = sys.h(i, j);
      if (entry == 0.0) continue;
      const double w = entry * entry * g.col_degree[j];
      const Index id = static_cast<Index>(g.edges.size());
      g.edges.push_back({i, j, w});
      g.row_edges[i].push_back(id);
      g.col_edges[j].push_back(id);
      g.row_degree(i) += w;
    }
  }
  return g;
}

void write_edge_list(std::ostream& os, const WalkGraph& g) {
  for (const WalkEdge& e : g.edges) {
    os << e.row << ' ';
    if (e.col == g.b_vertex()) {
      os << 'b';
    } else {
      os << e.col;
    }
    os << ' ' << e.weight << '\n';
  }
}

StarStateSet build_star_states(const WalkGraph& g, const AugmentedSystem& sys) {
  StarStateSet s;
  s.dimension = g.dimension();
  s.num_rows = g.num_rows;
  s.num_cols = g.num_cols;
  s.row_degree = g.row_degree;

  std::vector<Eigen::Triplet<double>> trips;
  s.row_slot.assign(g.num_rows, -1);
  Index slot = 0;
  for (Index i = 0; i < g.num_rows; ++i) {
    if (g.row_edges[i].empty()) continue;
    s.row_slot[i] = slot;
    const double norm = std::sqrt(g.row_degree(i));
    for (Index e : g.row_edges[i]) {
      const Index j = g.edges[e].col;
      // The sign follows H, so the b edge carries -b_i.
      const double amp = sys.h(i, j) * std::sqrt(static_cast<double>(g.col_degree[j])) / norm;
      trips.emplace_back(e, slot, amp);
    }
    ++slot;
  }
  s.row_basis.resize(s.dimension, slot);
  s.row_basis.setFromTriplets(trips.begin(), trips.end());

  trips.clear();
  s.col_slot.assign(g.num_cols + 1, -1);
  slot = 0;
  auto add_column = [&](Index j) {
    s.col_slot[j] = slot;
    const double amp = 1.0 / std::sqrt(static_cast<double>(g.col_edges[j].size()));
    for (Index e : g.col_edges[j]) trips.emplace_back(e, slot, amp);
    ++slot;
  };
  for (Index j = 0; j < g.num_cols; ++j) {
    if (!g.col_edges[j].empty()) add_column(j);
  }
  add_column(g.b_vertex());
  s.col_basis.resize(s.dimension, slot);
  s.col_basis.setFromTriplets(trips.begin(), trips.end());
  return s;
}

Vector StarStateSet::psi(Index row) const {
  if (row < 0 || row >= num_rows || row_slot[row] < 0) return Vector::Zero(dimension);
  return Vector(row_basis.col(row_slot[row]));
}

Vector StarStateSet::phi(Index col) const {
  if (col < 0 || col > num_cols || col_slot[col] < 0) return Vector::Zero(dimension);
  return Vector(col_basis.col(col_slot[col]));
}

Vector StarStateSet::apply_pi_a(const Vector& v) const {
  return v - col_basis * (col_basis.transpose() * v);
}

Vector StarStateSet::apply_pi_b(const Vector& v) const {
  return row_basis * (row_basis.transpose() * v);
}

Vector StarStateSet::apply_walk(const Vector& v) const {
  const Vector rb = 2.0 * apply_pi_b(v) - v;
  return 2.0 * apply_pi_a(rb) - rb;
}

WalkOperator build_walk_operator(const StarStateSet& states, Index max_dimension) {
  const Index dim = states.dimension;
  if (dim > max_dimension) {
    throw NumericsError("edge space of dimension " + std::to_string(dim) +
                        " exceeds the dense operator cap " +
                        std::to_string(max_dimension));
  }
  WalkOperator op;
  const Matrix phi = Matrix(states.col_basis);
  const Matrix psi = Matrix(states.row_basis);
  op.pi_a = Matrix::Identity(dim, dim) - phi * phi.transpose();
  op.pi_b = psi * psi.transpose();
  const Matrix eye = Matrix::Identity(dim, dim);
  op.u = (2.0 * op.pi_a - eye) * (2.0 * op.pi_b - eye);
  return op;
}

CanonicalStates canonical_states(const StarStateSet& states,
                                 const InstanceMetrics& metrics) {
  const double scale = 1.0 + metrics.y_norm_sq;
  CanonicalStates out;

  Vector col_coeff = Vector::Zero(states.col_basis.cols());
  for (Index j = 0; j < states.num_cols; ++j) {
    if (states.col_slot[j] >= 0) col_coeff(states.col_slot[j]) = metrics.y(j);
  }
  col_coeff(states.col_slot[states.num_cols]) = 1.0;
  out.theta_star = states.col_basis * col_coeff / std::sqrt(scale);

  Vector row_coeff = Vector::Zero(states.row_basis.cols());
  for (Index i = 0; i < states.num_rows; ++i) {
    if (states.row_slot[i] >= 0) {
      row_coeff(states.row_slot[i]) = metrics.p(i) * std::sqrt(states.row_degree(i));
    }
  }
  out.p_b = states.row_basis * row_coeff / scale;
  return out;
}

double WalkIdentityReport::max_residual() const {
  return std::max({decomposition_residual, fixed_point_residual, projection_residual});
}

namespace {

template <typename PiA, typename PiB, typename Walk>
WalkIdentityReport check_walk_identities(const StarStateSet& states, const InstanceMetrics& metrics,
                         const Vector& phi_b, PiA pi_a, PiB pi_b, Walk walk) {
  const CanonicalStates cs = canonical_states(states, metrics);
  WalkIdentityReport rep;
  const Vector outside_a = cs.p_b - pi_a(cs.p_b);
  rep.decomposition_residual =
      (phi_b - (cs.theta_star / std::sqrt(1.0 + metrics.y_norm_sq) - outside_a)).norm();
  rep.fixed_point_residual = (walk(cs.theta_star) - cs.theta_star).norm();
  rep.projection_residual = (pi_b(cs.p_b) - cs.p_b).norm();
  return rep;
}

}  // namespace

WalkIdentityReport verify_walk_identities(const StarStateSet& states, const WalkOperator& op,
                          const InstanceMetrics& metrics, const Vector& phi_b) {
  return check_walk_identities(
      states, metrics, phi_b, [&](const Vector& v) -> Vector { return op.pi_a * v; },
      [&](const Vector& v) -> Vector { return op.pi_b * v; },
      [&](const Vector& v) -> Vector { return op.u * v; });
}

WalkIdentityReport verify_walk_identities(const StarStateSet& states, const InstanceMetrics& metrics) {
  return check_walk_identities(
      states, metrics, states.phi_b(),
      [&](const Vector& v) { return states.apply_pi_a(v); },
      [&](const Vector& v) { return states.apply_pi_b(v); },
      [&](const Vector& v) { return states.apply_walk(v); });
}

}  // namespace qlswalk
