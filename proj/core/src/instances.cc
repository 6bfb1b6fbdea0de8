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

#include "qlswalk/instances.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

namespace qlswalk {

namespace {

double gaussian(std::mt19937_64& rng) {
  // Box-Muller on our own uniform draw keeps streams identical across
  // standard libraries.
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i));
    std::swap(v[i - 1], v[std::min(j, i - 1)]);
  }
}

}  // namespace

Matrix WeldedTree::laplacian() const {
  Matrix lap = Matrix::Zero(num_vertices, num_vertices);
  for (const auto& [a, b] : edges) {
    lap(a, a) += 1.0;
    lap(b, b) += 1.0;
    lap(a, b) -= 1.0;
    lap(b, a) -= 1.0;
  }
  return lap;
}

std::vector<int> WeldedTree::degrees() const {
  std::vector<int> deg(num_vertices, 0);
  for (const auto& [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

WeldedTree make_welded_tree(int depth, std::uint64_t seed) {
  if (depth < 2 || depth > 7) throw NumericsError("welded tree depth must lie in [2, 7]");
  WeldedTree t;
  t.depth = depth;
  const int tree_size = (1 << (depth + 1)) - 1;
  const int leaves = 1 << depth;
  t.num_vertices = 2 * tree_size;
  t.root_left = 0;
  t.root_right = tree_size;
  t.vertex_depth.resize(t.num_vertices);
  t.side.resize(t.num_vertices);
  for (int off : {0, tree_size}) {
    for (int k = 0; k < tree_size; ++k) {
      t.vertex_depth[off + k] = std::bit_width(static_cast<unsigned>(k + 1)) - 1;
      t.side[off + k] = off == 0 ? 0 : 1;
      for (int c : {2 * k + 1, 2 * k + 2}) {
        if (c < tree_size) t.edges.emplace_back(off + k, off + c);
      }
    }
  }
  std::vector<int> left(leaves);
  std::vector<int> right(leaves);
  for (int k = 0; k < leaves; ++k) {
    left[k] = leaves - 1 + k;
    right[k] = tree_size + leaves - 1 + k;
  }
  std::mt19937_64 rng(seed);
  shuffle(left, rng);
  shuffle(right, rng);
  for (int k = 0; k < leaves; ++k) {
    t.edges.emplace_back(std::min(left[k], right[k]), std::max(left[k], right[k]));
    const int next = left[(k + 1) % leaves];
    t.edges.emplace_back(std::min(right[k], next), std::max(right[k], next));
  }
  std::sort(t.edges.begin(), t.edges.end());

  t.incidence = Matrix::Zero(t.num_vertices, static_cast<Index>(t.edges.size()));
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    t.incidence(t.edges[e].first, e) = -1.0;
    t.incidence(t.edges[e].second, e) = 1.0;
  }
  t.demand = Vector::Zero(t.num_vertices);
  t.demand(t.root_left) = 1.0;
  t.demand(t.root_right) = -1.0;
  return t;
}

WeldedTreeGroundTruth welded_tree_ground_truth(const WeldedTree& tree) {
  WeldedTreeGroundTruth g;
  const double tail = 0.75 * std::ldexp(1.0, -tree.depth);
  g.resistance = 2.0 - 1.5 * std::ldexp(1.0, -tree.depth);
  g.potentials.resize(tree.num_vertices);
  for (int v = 0; v < tree.num_vertices; ++v) {
    const double value = std::ldexp(1.0, -tree.vertex_depth[v]) - tail;
    g.potentials(v) = tree.side[v] == 0 ? value : -value;
  }
  g.potential_norm_sq = g.potentials.squaredNorm();
  return g;
}

AugmentedSystem welded_tree_system(const WeldedTree& tree) {
  return build_augmented(tree.incidence, tree.demand);
}

void write_edge_list(std::ostream& os, const WeldedTree& tree) {
  for (const auto& [a, b] : tree.edges) os << a << ' ' << b << '\n';
}

AugmentedSystem make_diagonal_example(int n) {
  if (n < 1) throw NumericsError("diagonal example needs n >= 1");
  Matrix a = Matrix::Identity(n, n);
  a(n - 1, n - 1) = 1.0 / n;
  Vector b = Vector::Zero(n);
  b(n - 1) = 1.0 / n;
  return build_augmented(std::move(a), std::move(b));
}

AugmentedSystem make_random_consistent(int rows, int cols, double density,
                                       std::uint64_t seed) {
  if (cols < 1 || rows < cols || rows > 64) {
    throw NumericsError("random system needs 1 <= cols <= rows <= 64");
  }
  if (!(density > 0.0 && density <= 1.0)) throw NumericsError("density must lie in (0, 1]");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 10; ++attempt) {
    Matrix a = Matrix::Zero(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        if (uniform01(rng) < density) a(i, j) = gaussian(rng);
      }
    }
    Vector y0(cols);
    for (int j = 0; j < cols; ++j) y0(j) = gaussian(rng);
    Vector b = a * y0;
    if (b.norm() > 1e-12 * std::max(1.0, a.norm())) {
      return build_augmented(std::move(a), std::move(b));
    }
  }
  throw NumericsError("random system generation produced a zero right-hand side 10 times");
}

}  // namespace qlswalk
