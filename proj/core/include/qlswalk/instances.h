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

#ifndef QLSWALK_INSTANCES_H_
#define QLSWALK_INSTANCES_H_

#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include "qlswalk/numerics.h"
#include "qlswalk/system_model.h"

namespace qlswalk {

// Two complete binary trees of equal depth whose leaves are joined by an
// alternating cycle. Vertices 0..T-1 form the left tree in heap order (root 0,
// children 2k+1 and 2k+2); T..2T-1 form the right tree the same way.
struct WeldedTree {
  int depth = 0;
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // (tail, head) with tail < head
  int root_left = 0;
  int root_right = 0;
  std::vector<int> vertex_depth;  // distance from the vertex's own root
  std::vector<int> side;          // 0 for the left tree, 1 for the right
  Matrix incidence;               // vertices x edges, -1 at tail, +1 at head
  Vector demand;                  // +1 at the left root, -1 at the right root

  Matrix laplacian() const;
  std::vector<int> degrees() const;
};

WeldedTree make_welded_tree(int depth, std::uint64_t seed);

struct WeldedTreeGroundTruth {
  double resistance = 0.0;     // 2 - 1.5 * 2^-n
  Vector potentials;           // per vertex
  double potential_norm_sq = 0.0;
};

WeldedTreeGroundTruth welded_tree_ground_truth(const WeldedTree& tree);

AugmentedSystem welded_tree_system(const WeldedTree& tree);

void write_edge_list(std::ostream& os, const WeldedTree& tree);

// A = diag(I_{n-1}, 1/n), b = e_n / n; the solution is e_n while kappa(A) = n.
AugmentedSystem make_diagonal_example(int n);

// Sparse A with the given fill density, b = A y0 for a random y0.
AugmentedSystem make_random_consistent(int rows, int cols, double density,
                                       std::uint64_t seed);

}  // namespace qlswalk

#endif  // QLSWALK_INSTANCES_H_
