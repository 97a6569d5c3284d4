#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "utree/graph.hpp"

namespace utree {

// Vertex-labelled tree over dense ids 0..N-1. Edges carry stable integer ids
// in construction order. core_edges, when present, is the star {c v_1 ... c v_n}
// recorded by the T(p,s) builders.
class Tree {
 public:
  Tree(int n, std::vector<std::pair<int, int>> edges,
       std::optional<int> root = std::nullopt, std::vector<int> core = {})
      : n_(n), edges_(std::move(edges)), root_(root), core_(std::move(core)) {
    if (n_ < 1) throw std::invalid_argument("tree needs at least one vertex");
    if (static_cast<int>(edges_.size()) != n_ - 1)
      throw std::invalid_argument("tree must have N-1 edges");
    adj_.assign(n_, {});
    std::set<std::pair<int, int>> seen;
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
      auto [u, v] = edges_[e];
      if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::invalid_argument("edge endpoint out of range");
      if (u == v) throw std::invalid_argument("self-loops not allowed");
      if (!seen.insert(std::minmax(u, v)).second)
        throw std::invalid_argument("duplicate edge");
      adj_[u].push_back({v, e});
      adj_[v].push_back({u, e});
    }
    // N-1 distinct edges + connected => acyclic
    detail::UnionFind uf(n_);
    for (auto& [u, v] : edges_) uf.unite(u, v);
    if (uf.components() != 1)
      throw std::invalid_argument("edge set is not connected");
    if (root_ && (*root_ < 0 || *root_ >= n_))
      throw std::invalid_argument("root out of range");
    if (!core_.empty()) validate_core();
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return n_ - 1; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::optional<int> root() const { return root_; }
  const std::vector<int>& core_edges() const { return core_; }

  // (neighbor, edge id) pairs in construction order.
  const std::vector<std::pair<int, int>>& neighbors(int v) const {
    return adj_.at(v);
  }
  int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }

  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("invalid vertex id");
  }
  void check_edge(int e) const {
    if (e < 0 || e >= edge_count())
      throw std::invalid_argument("invalid edge id");
  }

  // Center of the core star; only when core_edges is present.
  int core_center() const {
    if (core_.empty()) throw std::logic_error("tree has no core");
    if (core_.size() == 1) return edges_[core_[0]].first;
    auto [a1, b1] = edges_[core_[0]];
    auto [a2, b2] = edges_[core_[1]];
    return (a1 == a2 || a1 == b2) ? a1 : b1;
  }

  WeightedGraph as_weighted_graph(std::vector<int> weights) const {
    return WeightedGraph(n_, edges_, std::move(weights));
  }
  WeightedGraph as_weighted_graph() const {
    return WeightedGraph(n_, edges_);
  }

 private:
  void validate_core() {
    std::set<int> ids(core_.begin(), core_.end());
    if (ids.size() != core_.size())
      throw std::invalid_argument("duplicate core edge id");
    for (int e : core_) check_edge(e);
    if (core_.size() >= 2) {
      const int c = core_center();
      std::set<int> leaves;
      for (int e : core_) {
        auto [u, v] = edges_[e];
        if (u != c && v != c)
          throw std::invalid_argument("core edges do not induce a star");
        leaves.insert(u == c ? v : u);
      }
      if (leaves.size() != core_.size() || leaves.count(c))
        throw std::invalid_argument("core edges do not induce a star");
    }
  }

  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::optional<int> root_;
  std::vector<int> core_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
};

// Tree with positive integer vertex weights.
class WeightedTree {
 public:
  WeightedTree(Tree tree, std::vector<int> weights)
      : tree_(std::move(tree)), weights_(std::move(weights)) {
    if (static_cast<int>(weights_.size()) != tree_.vertex_count())
      throw std::invalid_argument("weight count must match vertex count");
    for (int w : weights_)
      if (w < 1) throw std::invalid_argument("weights must be positive");
  }

  explicit WeightedTree(Tree tree)
      : WeightedTree(std::move(tree),
                     std::vector<int>(tree.vertex_count(), 1)) {
  }

  const Tree& tree() const { return tree_; }
  const std::vector<int>& weights() const { return weights_; }
  int weight(int v) const { return weights_.at(v); }
  long long total_weight() const {
    long long s = 0;
    for (int w : weights_) s += w;
    return s;
  }

  WeightedGraph as_weighted_graph() const {
    return tree_.as_weighted_graph(weights_);
  }

 private:
  Tree tree_;
  std::vector<int> weights_;
};

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

// B(p,s): p disjoint 4-paths and s disjoint 4-stars with one leaf of each
// identified into a common root (vertex 0). Paths first, then stars.
inline Tree build_b_tree(int p, int s) {
  if (p < 0 || s < 0)
    throw std::invalid_argument("B(p,s) needs nonnegative p, s");
  const int n = 1 + 3 * (p + s);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  int next = 1;
  for (int i = 0; i < p; ++i) {  // root - x - y - z
    int x = next++, y = next++, z = next++;
    edges.push_back({0, x});
    edges.push_back({x, y});
    edges.push_back({y, z});
  }
  for (int i = 0; i < s; ++i) {  // root - m; m - a; m - b
    int m = next++, a = next++, b = next++;
    edges.push_back({0, m});
    edges.push_back({m, a});
    edges.push_back({m, b});
  }
  return Tree(n, std::move(edges), 0);
}

// T(p,s): disjoint B(p_i,s_i) with roots v_i joined to a new center c
// (vertex 0). Edge block for branch i: the core edge c v_i first, then the
// branch's internal edges. core_edges collects the n core edge ids.
inline Tree build_t_tree(std::span<const int> p, std::span<const int> s) {
  if (p.size() != s.size())
    throw std::invalid_argument("T(p,s) needs |p| = |s|");
  const int n = static_cast<int>(p.size());
  if (n < 2) throw std::invalid_argument("T(p,s) needs length >= 2");
  int total = 1;
  for (int i = 0; i < n; ++i) {
    if (p[i] < 0 || s[i] < 0)
      throw std::invalid_argument("T(p,s) needs nonnegative entries");
    total += 1 + 3 * (p[i] + s[i]);
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(total - 1);
  std::vector<int> core;
  core.reserve(n);
  int next = 1;
  for (int i = 0; i < n; ++i) {
    const Tree branch = build_b_tree(p[i], s[i]);
    const int base = next;  // branch root v_i
    next += branch.vertex_count();
    core.push_back(static_cast<int>(edges.size()));
    edges.push_back({0, base});
    for (auto [u, v] : branch.edges()) edges.push_back({base + u, base + v});
  }
  return Tree(total, std::move(edges), std::nullopt, std::move(core));
}

// The triple identifying a PTE tree up to isomorphism: T_alpha(p) with p
// stored weakly decreasing.
struct PteShape {
  int alpha = 0;
  std::vector<int> p;

  PteShape(int alpha_, std::vector<int> p_)
      : alpha(alpha_), p(std::move(p_)) {
    if (alpha < 0) throw std::invalid_argument("alpha must be nonnegative");
    if (p.size() < 2) throw std::invalid_argument("PteShape needs n >= 2");
    std::sort(p.begin(), p.end(), std::greater<int>());
    for (int x : p)
      if (x < 0 || x > alpha)
        throw std::invalid_argument("p must be alpha-compatible");
  }

  int n() const { return static_cast<int>(p.size()); }
  int vertex_count() const { return (3 * alpha + 1) * n() + 1; }
  long long beta() const {
    long long b = 0;
    for (int x : p) b += x;
    return b;
  }
  friend bool operator==(const PteShape&, const PteShape&) = default;
};

inline Tree build_pte_tree(const PteShape& shape) {
  std::vector<int> s(shape.p.size());
  for (std::size_t i = 0; i < shape.p.size(); ++i)
    s[i] = shape.alpha - shape.p[i];
  return build_t_tree(shape.p, s);
}

// ---------------------------------------------------------------------------
// Rooted scaffolding (iterative; shared by several operations)
// ---------------------------------------------------------------------------

namespace detail {

struct Rooted {
  int root = 0;
  std::vector<int> order;        // vertices in BFS order from root
  std::vector<int> parent;       // parent vertex (-1 at root)
  std::vector<int> parent_edge;  // edge id to parent (-1 at root)
  std::vector<long long> size;   // subtree weight (unit weights: count)
  std::vector<int> tin, tout;    // DFS-interval per vertex
};

inline Rooted root_tree(const Tree& t, int root,
                        std::span<const int> weights = {}) {
  Rooted r;
  r.root = root;
  const int n = t.vertex_count();
  r.parent.assign(n, -1);
  r.parent_edge.assign(n, -1);
  r.order.reserve(n);
  r.order.push_back(root);
  for (std::size_t i = 0; i < r.order.size(); ++i) {
    int v = r.order[i];
    for (auto [u, e] : t.neighbors(v)) {
      if (u == r.parent[v]) continue;
      r.parent[u] = v;
      r.parent_edge[u] = e;
      r.order.push_back(u);
    }
  }
  r.size.assign(n, 0);
  for (int i = n - 1; i >= 0; --i) {
    int v = r.order[i];
    r.size[v] += weights.empty() ? 1 : weights[v];
    if (r.parent[v] >= 0) r.size[r.parent[v]] += r.size[v];
  }
  // iterative DFS for tin/tout intervals
  r.tin.assign(n, 0);
  r.tout.assign(n, 0);
  int clock = 0;
  std::vector<std::pair<int, std::size_t>> stack;
  stack.push_back({root, 0});
  r.tin[root] = clock++;
  while (!stack.empty()) {
    auto& [v, idx] = stack.back();
    if (idx < t.neighbors(v).size()) {
      int u = t.neighbors(v)[idx++].first;
      if (u == r.parent[v]) continue;
      r.tin[u] = clock++;
      stack.push_back({u, 0});
    } else {
      r.tout[v] = clock++;
      stack.pop_back();
    }
  }
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Centroid and edge labels
// ---------------------------------------------------------------------------

// Maximum number of edges in any branch at v (a branch is a subtree having v
// as a leaf); equals the largest component size of t - v.
inline int branch_weight(const Tree& t, int v) {
  t.check_vertex(v);
  const auto r = detail::root_tree(t, v);
  int best = 0;
  for (auto [u, e] : t.neighbors(v))
    best = std::max(best, static_cast<int>(r.size[u]));
  return best;
}

namespace detail {

inline std::vector<int> branch_weights_all(const Tree& t) {
  const int n = t.vertex_count();
  const auto r = root_tree(t, 0);
  std::vector<int> bw(n, 0);
  for (int v = 0; v < n; ++v) {
    long long best = 0;
    for (auto [u, e] : t.neighbors(v)) {
      long long comp = (u == r.parent[v]) ? n - r.size[v] : r.size[u];
      best = std::max(best, comp);
    }
    bw[v] = static_cast<int>(best);
  }
  return bw;
}

}  // namespace detail

// All vertices attaining the minimum branch-weight; one or two vertices, and
// adjacent when two.
inline std::vector<int> centroid(const Tree& t) {
  const auto bw = detail::branch_weights_all(t);
  const int best = *std::min_element(bw.begin(), bw.end());
  std::vector<int> out;
  for (int v = 0; v < t.vertex_count(); ++v)
    if (bw[v] == best) out.push_back(v);
  if (out.size() > 2) throw std::logic_error("centroid has >2 vertices");
  if (out.size() == 2) {
    bool adjacent = false;
    for (auto [u, e] : t.neighbors(out[0])) adjacent |= (u == out[1]);
    if (!adjacent) throw std::logic_error("double centroid not adjacent");
  }
  return out;
}

// theta_e = size of the smaller side of t - e, indexed by edge id.
// lambda(E \ {e}) = (N - theta_e, theta_e); a balanced edge gives N/2.
inline std::vector<int> edge_labels(const Tree& t) {
  const auto r = detail::root_tree(t, 0);
  const long long n = t.vertex_count();
  std::vector<int> labels(t.edge_count(), 0);
  for (int v = 0; v < t.vertex_count(); ++v) {
    if (r.parent_edge[v] < 0) continue;
    long long below = r.size[v];
    labels[r.parent_edge[v]] =
        static_cast<int>(std::min(below, n - below));
  }
  return labels;
}

// True iff neither edge lies on the other's path to the (unique) centroid.
inline bool edges_repel(const Tree& t, int e, int f) {
  t.check_edge(e);
  t.check_edge(f);
  if (e == f) throw std::invalid_argument("edges_repel needs e != f");
  const auto cents = centroid(t);
  if (cents.size() != 1)
    throw std::invalid_argument("attract/repel undefined for double centroid");
  const auto r = detail::root_tree(t, cents[0]);
  // child endpoint of an edge when rooted at the centroid
  auto child_of = [&](int edge) {
    auto [u, v] = t.edges()[edge];
    return r.parent[u] == v ? u : v;
  };
  const int ce = child_of(e), cf = child_of(f);
  auto contains = [&](int a, int b) {  // subtree of a contains b
    return r.tin[a] <= r.tin[b] && r.tout[b] <= r.tout[a];
  };
  const bool attract = contains(ce, cf) || contains(cf, ce);
  return !attract;
}

// ---------------------------------------------------------------------------
// Contraction
// ---------------------------------------------------------------------------

// S_{omega,T}: contract every edge not in F, adding weights along contracted
// edges. F must induce a subtree. Kept vertices are renumbered by increasing
// original id; edges keep F's increasing-id order.
inline WeightedTree contract_to(const WeightedTree& wt,
                                std::span<const int> F) {
  const Tree& t = wt.tree();
  std::vector<int> f(F.begin(), F.end());
  std::sort(f.begin(), f.end());
  if (std::adjacent_find(f.begin(), f.end()) != f.end())
    throw std::invalid_argument("duplicate edge id in F");
  for (int e : f) t.check_edge(e);

  if (f.empty()) {
    Tree single(1, {});
    return WeightedTree(std::move(single),
                        {static_cast<int>(wt.total_weight())});
  }

  // connectivity of the induced subgraph: |vertices(F)| == |F| + 1
  std::set<int> kept_set;
  detail::UnionFind conn(t.vertex_count());
  for (int e : f) {
    auto [u, v] = t.edges()[e];
    kept_set.insert(u);
    kept_set.insert(v);
    conn.unite(u, v);
  }
  {
    std::set<int> roots;
    for (int v : kept_set) roots.insert(conn.find(v));
    if (roots.size() != 1)
      throw std::invalid_argument("F does not induce a subtree");
  }

  // merge along the complement
  std::vector<bool> in_f(t.edge_count(), false);
  for (int e : f) in_f[e] = true;
  detail::UnionFind uf(t.vertex_count());
  for (int e = 0; e < t.edge_count(); ++e)
    if (!in_f[e]) uf.unite(t.edges()[e].first, t.edges()[e].second);

  std::vector<int> kept(kept_set.begin(), kept_set.end());
  std::vector<int> new_id(t.vertex_count(), -1);
  std::vector<int> rep_of_class(t.vertex_count(), -1);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    new_id[kept[i]] = static_cast<int>(i);
    rep_of_class[uf.find(kept[i])] = static_cast<int>(i);
  }
  std::vector<long long> w(kept.size(), 0);
  for (int v = 0; v < t.vertex_count(); ++v) {
    int rep = rep_of_class[uf.find(v)];
    if (rep < 0) throw std::logic_error("vertex not absorbed by subtree");
    w[rep] += wt.weight(v);
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(f.size());
  for (int e : f)
    edges.push_back({new_id[t.edges()[e].first], new_id[t.edges()[e].second]});
  std::vector<int> weights(w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    weights[i] = static_cast<int>(w[i]);
  Tree st(static_cast<int>(kept.size()), std::move(edges));
  return WeightedTree(std::move(st), std::move(weights));
}

// ---------------------------------------------------------------------------
// Canonical form (AHU at the centroid)
// ---------------------------------------------------------------------------

namespace detail {

// AHU code of the subtree at v away from `banned`, as a balanced-paren string
// with sorted child codes.
inline std::string ahu_code(const Tree& t, int v, int banned) {
  std::vector<std::string> children;
  for (auto [u, e] : t.neighbors(v))
    if (u != banned) children.push_back(ahu_code(t, u, v));
  std::sort(children.begin(), children.end());
  std::string code = "(";
  for (auto& c : children) code += c;
  code += ')';
  return code;
}

}  // namespace detail

// Totally ordered canonical code; equal codes iff the trees are isomorphic.
// Rooted AHU at the unique centroid, or at the centroid edge split (both
// orientations, lexicographic minimum) for a double centroid.
inline std::string canonical_form(const Tree& t) {
  const auto cents = centroid(t);
  if (cents.size() == 1) return "1:" + detail::ahu_code(t, cents[0], -1);
  const std::string a = detail::ahu_code(t, cents[0], cents[1]);
  const std::string b = detail::ahu_code(t, cents[1], cents[0]);
  return "2:" + (a <= b ? a + b : b + a);
}

}  // namespace utree
