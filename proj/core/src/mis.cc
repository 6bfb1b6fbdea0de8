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

#include "qlswalk/mis.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>

namespace qlswalk {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

Monomial random_subset(int n, int k, std::mt19937_64& rng) {
  std::vector<int> ids(n);
  for (int v = 0; v < n; ++v) ids[v] = v;
  Monomial out = 0;
  for (int j = 0; j < k; ++j) {
    const int pick = j + static_cast<int>(uniform01(rng) * (n - j));
    std::swap(ids[j], ids[std::min(pick, n - 1)]);
    out |= Monomial{1} << ids[j];
  }
  return out;
}

}  // namespace

Graph make_graph(int num_vertices, std::vector<std::pair<int, int>> edges) {
  if (num_vertices < 1 || num_vertices > kMaxVariables) {
    throw NumericsError("graph size must lie in [1, " + std::to_string(kMaxVariables) + "]");
  }
  Graph g;
  g.num_vertices = num_vertices;
  g.neighbors.assign(num_vertices, 0);
  for (auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= num_vertices || b >= num_vertices) {
      throw NumericsError("edge endpoint out of range");
    }
    if (a == b) throw NumericsError("self-loops are not allowed");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto& [a, b] : edges) {
    g.neighbors[a] |= Monomial{1} << b;
    g.neighbors[b] |= Monomial{1} << a;
  }
  g.edges = std::move(edges);
  return g;
}

bool is_independent(const Graph& g, Monomial set) {
  for (int v = 0; v < g.num_vertices; ++v) {
    if ((set >> v & 1U) && (g.neighbors[v] & set)) return false;
  }
  return true;
}

std::vector<Monomial> enumerate_independent_sets(const Graph& g) {
  std::vector<Monomial> out;
  std::vector<std::pair<int, Monomial>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [v, set] = stack.back();
    stack.pop_back();
    if (v == g.num_vertices) {
      out.push_back(set);
      continue;
    }
    stack.emplace_back(v + 1, set);
    if (!(g.neighbors[v] & set)) stack.emplace_back(v + 1, set | Monomial{1} << v);
  }
  return out;
}

IndependentSetCounts count_independent_sets(const Graph& g, Monomial planted) {
  IndependentSetCounts c;
  const int n = g.num_vertices;
  c.by_size.assign(n + 1, 0);
  c.by_size_outside.assign(n + 1, std::vector<std::int64_t>(n + 1, 0));
  for (Monomial s : enumerate_independent_sets(g)) {
    const int i = std::popcount(s);
    const int t = std::popcount(s & ~planted);
    ++c.by_size[i];
    ++c.by_size_outside[i][t];
  }
  for (int i = n; i >= 0; --i) {
    if (c.by_size[i] > 0) {
      c.max_size = i;
      c.max_count = c.by_size[i];
      break;
    }
  }
  return c;
}

MisInstance make_mis_instance(Graph g, Monomial planted) {
  if (!is_independent(g, planted)) throw NumericsError("planted set is not independent");
  MisInstance inst;
  inst.planted = planted;
  inst.planted_size = std::popcount(planted);
  const IndependentSetCounts c = count_independent_sets(g, planted);
  inst.unique = c.max_size == inst.planted_size && c.max_count == 1;
  inst.graph = std::move(g);
  return inst;
}

MisInstance make_planted_mis(int n, int h, double edge_probability, std::uint64_t seed) {
  if (h < 1 || h > n || n > kMaxVariables) throw NumericsError("invalid planted MIS size");
  if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
    throw NumericsError("edge probability must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Monomial planted = random_subset(n, h, rng);
    std::vector<int> members;
    for (int v = 0; v < n; ++v) {
      if (planted >> v & 1U) members.push_back(v);
    }
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
      if (planted >> u & 1U) continue;
      // Two forced links into the planted set block single-vertex swaps.
      const Monomial forced = random_subset(h, std::min(h, 2), rng);
      for (int k = 0; k < h; ++k) {
        if (forced >> k & 1U) edges.emplace_back(u, members[k]);
      }
      for (int v = 0; v < n; ++v) {
        if (v == u) continue;
        if ((planted >> v & 1U) || v > u) {
          if (uniform01(rng) < edge_probability) edges.emplace_back(u, v);
        }
      }
    }
    MisInstance inst = make_mis_instance(make_graph(n, std::move(edges)), planted);
    if (inst.unique) return inst;
  }
  throw NumericsError("could not plant a unique maximum independent set in 1000 attempts");
}

MisInstance make_clique_planted(int h, int cliques, int clique_size, std::uint64_t seed) {
  const int n = h + cliques * clique_size;
  if (h < 2 || cliques < 0 || clique_size < 1 || n > kMaxVariables) {
    throw NumericsError("invalid clique instance size");
  }
  std::mt19937_64 rng(seed);
  const Monomial planted = (Monomial{1} << h) - 1;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::pair<int, int>> edges;
    for (int c = 0; c < cliques; ++c) {
      const int first = h + c * clique_size;
      for (int a = 0; a < clique_size; ++a) {
        for (int b = a + 1; b < clique_size; ++b) edges.emplace_back(first + a, first + b);
        const Monomial pair = random_subset(h, 2, rng);
        for (int v = 0; v < h; ++v) {
          if (pair >> v & 1U) edges.emplace_back(v, first + a);
        }
      }
    }
    MisInstance inst = make_mis_instance(make_graph(n, std::move(edges)), planted);
    if (inst.unique) return inst;
  }
  throw NumericsError("could not build a unique clique instance in 1000 attempts");
}

PolynomialSystem mis_encode(const MisInstance& inst) {
  PolynomialSystem f;
  f.num_vars = inst.graph.num_vertices;
  for (const auto& [a, b] : inst.graph.edges) {
    f.polynomials.push_back({{1.0, (Monomial{1} << a) | (Monomial{1} << b)}});
  }
  Polynomial count;
  for (int v = 0; v < f.num_vars; ++v) count.push_back({1.0, Monomial{1} << v});
  count.push_back({-static_cast<double>(inst.planted_size), 0});
  f.polynomials.push_back(std::move(count));
  f.validate();
  return f;
}

MisPTable mis_p_recurrence(const MisInstance& inst, int weight) {
  if (weight < 1 || weight > inst.graph.num_vertices) {
    throw NumericsError("weight must lie in [1, n]");
  }
  MisPTable table;
  table.weight = weight;
  table.p.assign(weight, {});
  table.p[0] = {1.0};
  // Row (m, f) of the weighted system pairs p_m with the sub-rows m \ x_j;
  // grouping rows by (i, t) gives
  //   (h - i) p_{i,t} = t p_{i-1,t-1} + (i - t) p_{i-1,t} - [t = 0] / C(h, i).
  for (int i = 1; i < weight; ++i) {
    table.p[i].assign(i + 1, 0.0);
    for (int t = 0; t <= i; ++t) {
      double acc = 0.0;
      if (t >= 1) acc += t * table.p[i - 1][t - 1];
      if (t <= i - 1) acc += (i - t) * table.p[i - 1][t];
      if (t == 0) acc -= 1.0 / binomial(weight, i);
      table.p[i][t] = acc / (weight - i);
    }
  }
  return table;
}

MisEtPrediction predicted_et_mis(const MisInstance& inst, int weight) {
  const PolynomialSystem f = mis_encode(inst);
  const MacaulaySystem ms = build_macaulay(f, weight, true);
  const AugmentedSystem weighted = rescale(ms);
  const MisPTable table = mis_p_recurrence(inst, weight);

  std::map<std::pair<int, int>, MisEtCell> cells;
  for (std::size_t r = 0; r < ms.rows.size(); ++r) {
    const Monomial m = ms.rows[r].multiplier;
    const int i = std::popcount(m);
    const int t = std::popcount(m & ~inst.planted);
    if (i >= weight) throw NumericsError("nonzero row of degree >= h; is the MIS unique?");
    MisEtCell& cell = cells[{i, t}];
    cell.size = i;
    cell.outside = t;
    ++cell.count;
    cell.mean_row_norm += weighted.row_sq_norms(static_cast<Index>(r));
  }
  MisEtPrediction out;
  for (auto& [key, cell] : cells) {
    cell.p = table.at(cell.size, cell.outside);
    cell.contribution = cell.p * cell.p * cell.mean_row_norm;
    cell.mean_row_norm /= static_cast<double>(cell.count);
    out.predicted += cell.contribution;
    out.cells.push_back(cell);
  }
  const double n = inst.graph.num_vertices;
  out.budget = n * n * n * n;
  out.within_budget = out.predicted <= out.budget;
  const IndependentSetCounts counts = count_independent_sets(inst.graph, inst.planted);
  for (int i = 1; i < weight; ++i) {
    out.count_ratio = std::max(out.count_ratio,
                               static_cast<double>(counts.by_size[i]) / binomial(weight, i));
  }
  out.count_condition = out.count_ratio <= n * n;
  return out;
}

}  // namespace qlswalk
