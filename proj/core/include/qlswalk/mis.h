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

#ifndef QLSWALK_MIS_H_
#define QLSWALK_MIS_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "qlswalk/macaulay.h"

namespace qlswalk {

struct Graph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // normalized to (lo, hi), sorted, unique
  std::vector<Monomial> neighbors;        // adjacency bitmask per vertex
};

Graph make_graph(int num_vertices, std::vector<std::pair<int, int>> edges);

bool is_independent(const Graph& g, Monomial set);

// Every independent set including the empty one (n <= 24).
std::vector<Monomial> enumerate_independent_sets(const Graph& g);

struct IndependentSetCounts {
  std::vector<std::int64_t> by_size;                     // I_i
  std::vector<std::vector<std::int64_t>> by_size_outside;  // I_{i,t}, t vertices outside S
  int max_size = 0;
  std::int64_t max_count = 0;  // number of maximum independent sets
};

IndependentSetCounts count_independent_sets(const Graph& g, Monomial planted = 0);

struct MisInstance {
  Graph graph;
  Monomial planted = 0;
  int planted_size = 0;
  bool unique = false;  // planted set is the only maximum independent set
};

// Validates independence and fills the uniqueness flag by enumeration.
MisInstance make_mis_instance(Graph g, Monomial planted);

// Random graph with a planted independent set of size h that is brute-force
// confirmed to be the unique maximum one.
MisInstance make_planted_mis(int n, int h, double edge_probability, std::uint64_t seed);

// Planted set plus disjoint cliques on the remaining vertices; every clique
// vertex is joined to two planted vertices, which keeps the planted set the
// unique maximum.
MisInstance make_clique_planted(int h, int cliques, int clique_size, std::uint64_t seed);

// {x_i x_j = 0 per edge} followed by {sum_i x_i - h}.
PolynomialSystem mis_encode(const MisInstance& inst);

// Potentials of the pruned, weighted MIS system as a function of the row
// degree i and the number t of row variables outside the planted set.
struct MisPTable {
  int weight = 0;
  std::vector<std::vector<double>> p;  // p[i][t], 0 <= t <= i < weight
  double at(int i, int t) const { return p.at(i).at(t); }
};

MisPTable mis_p_recurrence(const MisInstance& inst, int weight);

struct MisEtCell {
  int size = 0;     // i
  int outside = 0;  // t
  std::int64_t count = 0;
  double mean_row_norm = 0.0;
  double p = 0.0;
  double contribution = 0.0;
};

struct MisEtPrediction {
  double predicted = 0.0;
  std::vector<MisEtCell> cells;
  double budget = 0.0;  // n^4
  bool within_budget = false;
  // max_i I_i / C(h, i) over 1 <= i < h; polynomial when below n^2.
  double count_ratio = 0.0;
  bool count_condition = false;
};

MisEtPrediction predicted_et_mis(const MisInstance& inst, int weight);

}  // namespace qlswalk

#endif  // QLSWALK_MIS_H_
