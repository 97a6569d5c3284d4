#pragma once

#include <numeric>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "utree/partition.hpp"

namespace utree {

namespace detail {

// Plain union-find over dense vertex ids.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), comps_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    --comps_;
    return true;
  }
  int components() const { return comps_; }

 private:
  std::vector<int> parent_;
  int comps_;
};

}  // namespace detail

// Simple undirected weighted graph over vertices 0..n-1. May contain cycles;
// used by the states-model W-polynomial. Trees get their own validated type.
class WeightedGraph {
 public:
  WeightedGraph(int n, std::vector<std::pair<int, int>> edges,
                std::vector<int> weights)
      : n_(n), edges_(std::move(edges)), weights_(std::move(weights)) {
    if (n_ < 1) throw std::invalid_argument("graph needs at least one vertex");
    if (static_cast<int>(weights_.size()) != n_)
      throw std::invalid_argument("weight count must match vertex count");
    for (int w : weights_)
      if (w < 1) throw std::invalid_argument("weights must be positive");
    std::set<std::pair<int, int>> seen;
    for (auto& [u, v] : edges_) {
      if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::invalid_argument("edge endpoint out of range");
      if (u == v) throw std::invalid_argument("self-loops not allowed");
      if (!seen.insert(std::minmax(u, v)).second)
        throw std::invalid_argument("duplicate edge");
    }
  }

  WeightedGraph(int n, std::vector<std::pair<int, int>> edges)
      : WeightedGraph(n, std::move(edges), std::vector<int>(n, 1)) {}

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& weights() const { return weights_; }

  long long total_weight() const {
    return std::accumulate(weights_.begin(), weights_.end(), 0LL);
  }

  void check_edge_ids(std::span<const int> A) const {
    for (int e : A)
      if (e < 0 || e >= edge_count())
        throw std::invalid_argument("invalid edge id");
  }

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> weights_;
};

// Partition of the total weight by the components of G restricted to A
// (all vertices kept).
inline Partition lambda_of(const WeightedGraph& g, std::span<const int> A) {
  g.check_edge_ids(A);
  detail::UnionFind uf(g.vertex_count());
  for (int e : A) uf.unite(g.edges()[e].first, g.edges()[e].second);
  std::vector<long long> acc(g.vertex_count(), 0);
  for (int v = 0; v < g.vertex_count(); ++v)
    acc[uf.find(v)] += g.weights()[v];
  std::vector<int> parts;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (acc[v] > 0) parts.push_back(static_cast<int>(acc[v]));
  return Partition(std::move(parts));
}

// r_G(A) = |V| - k(G|_A).
inline int rank(const WeightedGraph& g, std::span<const int> A) {
  g.check_edge_ids(A);
  detail::UnionFind uf(g.vertex_count());
  for (int e : A) uf.unite(g.edges()[e].first, g.edges()[e].second);
  return g.vertex_count() - uf.components();
}

}  // namespace utree
