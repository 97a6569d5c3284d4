#pragma once

#include <algorithm>
#include <set>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "utree/graph.hpp"
#include "utree/tree.hpp"

namespace testutil {

inline utree::Tree make_path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return utree::Tree(n, std::move(edges));
}

inline utree::Tree make_star(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.push_back({0, i});
  return utree::Tree(n, std::move(edges));
}

// Random attachment tree on n vertices.
inline utree::Tree random_tree(std::mt19937_64& rng, int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    edges.push_back({pick(rng), v});
  }
  return utree::Tree(n, std::move(edges));
}

// Copy of t with vertices renamed by a random permutation (edge order kept).
inline utree::Tree relabel_random(std::mt19937_64& rng, const utree::Tree& t) {
  std::vector<int> perm(t.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : t.edges()) edges.push_back({perm[u], perm[v]});
  return utree::Tree(t.vertex_count(), std::move(edges));
}

// Random positive weights in [1, 5].
inline std::vector<int> random_weights(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> w(1, 5);
  std::vector<int> weights(n);
  for (int& x : weights) x = w(rng);
  return weights;
}

// Random connected graph with at least one cycle, unit weights.
inline utree::WeightedGraph random_cyclic_graph(std::mt19937_64& rng, int n,
                                                int extra_edges) {
  std::set<std::pair<int, int>> used;
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    const int u = pick(rng);
    edges.push_back({u, v});
    used.insert(std::minmax(u, v));
  }
  std::uniform_int_distribution<int> pick(0, n - 1);
  int added = 0;
  for (int tries = 0; added < extra_edges && tries < 200; ++tries) {
    const int u = pick(rng), v = pick(rng);
    if (u == v || used.count(std::minmax(u, v))) continue;
    edges.push_back({u, v});
    used.insert(std::minmax(u, v));
    ++added;
  }
  return utree::WeightedGraph(n, std::move(edges));
}

// Random connected edge subset grown from a random start vertex; may be empty.
inline std::vector<int> random_subtree_edges(std::mt19937_64& rng,
                                             const utree::Tree& t) {
  const int m = t.edge_count();
  if (m == 0) return {};
  std::uniform_int_distribution<int> size_pick(0, m);
  const int want = size_pick(rng);
  std::uniform_int_distribution<int> start_pick(0, t.vertex_count() - 1);
  std::vector<bool> in_set(t.vertex_count(), false);
  std::vector<int> chosen;
  std::vector<std::pair<int, int>> frontier;  // (vertex, edge)
  int start = start_pick(rng);
  in_set[start] = true;
  for (auto [u, e] : t.neighbors(start)) frontier.push_back({u, e});
  while (static_cast<int>(chosen.size()) < want && !frontier.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
    const auto idx = pick(rng);
    auto [v, e] = frontier[idx];
    frontier.erase(frontier.begin() + static_cast<long>(idx));
    if (in_set[v]) continue;
    in_set[v] = true;
    chosen.push_back(e);
    for (auto [u, eu] : t.neighbors(v))
      if (!in_set[u]) frontier.push_back({u, eu});
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace testutil
