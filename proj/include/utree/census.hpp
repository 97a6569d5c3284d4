#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "utree/exact.hpp"
#include "utree/invariants.hpp"
#include "utree/polynomial.hpp"
#include "utree/tree.hpp"

namespace utree {

// Subtree type (q,t): subtrees isomorphic to T(q,t).
struct BranchType {
  std::vector<int> q;
  std::vector<int> t;

  BranchType(std::vector<int> q_, std::vector<int> t_)
      : q(std::move(q_)), t(std::move(t_)) {
    if (q.size() != t.size())
      throw std::invalid_argument("branch type needs |q| = |t|");
    for (std::size_t i = 0; i < q.size(); ++i)
      if (q[i] < 0 || t[i] < 0)
        throw std::invalid_argument("branch type entries must be nonnegative");
  }

  int n() const { return static_cast<int>(q.size()); }
  int total() const {
    int s = 0;
    for (std::size_t i = 0; i < q.size(); ++i) s += q[i] + t[i];
    return s;
  }
};

// Number of permutations fixing (q,t) pairwise: product of factorials of the
// multiplicities of the pairs (q_i, t_i).
inline BigInt symmetry_count(const BranchType& bt) {
  std::map<std::pair<int, int>, int> mult;
  for (int i = 0; i < bt.n(); ++i) ++mult[{bt.q[i], bt.t[i]}];
  BigInt r = 1;
  for (const auto& [pair, m] : mult) r *= factorial(m);
  return r;
}

// |S_{q,t}(T_alpha(p))| as an exact integer: the permutation sum divided by
// the symmetry count, computed by summing over distinct arrangements of the
// (q,t) pair multiset (no rational intermediates).
inline BigInt count_subtrees_formula(int alpha, std::span<const int> p,
                                     const BranchType& bt) {
  if (static_cast<int>(p.size()) != bt.n())
    throw std::invalid_argument("sequence length must match branch type");
  for (int x : p)
    if (x < 0 || x > alpha)
      throw std::invalid_argument("p must be alpha-compatible");
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(bt.n());
  for (int i = 0; i < bt.n(); ++i) pairs.push_back({bt.q[i], bt.t[i]});
  std::sort(pairs.begin(), pairs.end());
  BigInt total = 0;
  do {
    BigInt prod = 1;
    for (int i = 0; i < bt.n() && prod != 0; ++i) {
      prod *= binomial(p[i], pairs[i].first);
      prod *= binomial(alpha - p[i], pairs[i].second);
    }
    total += prod;
  } while (std::next_permutation(pairs.begin(), pairs.end()));
  return total;
}

namespace detail {

// Branch decomposition of a PTE tree: per core leaf v_i, the edge triples of
// its whole 4-path and 4-star units. Fails on anything not built like
// build_pte_tree output.
struct PteDecomposition {
  int center = 0;
  std::vector<int> core_edge_ids;            // by branch
  std::vector<int> branch_roots;             // v_i by branch
  std::vector<std::vector<std::vector<int>>> path_units;  // [branch][unit] -> 3 edge ids
  std::vector<std::vector<std::vector<int>>> star_units;
};

inline PteDecomposition decompose_pte_tree(const Tree& t) {
  if (t.core_edges().empty())
    throw std::invalid_argument("tree has no recorded core");
  PteDecomposition d;
  d.center = t.core_center();
  const auto r = root_tree(t, d.center);
  auto children = [&](int v) {
    std::vector<std::pair<int, int>> out;  // (child vertex, edge id)
    for (auto [u, e] : t.neighbors(v))
      if (u != r.parent[v]) out.push_back({u, e});
    return out;
  };
  std::vector<int> core_sorted = t.core_edges();
  std::sort(core_sorted.begin(), core_sorted.end());
  for (int ce : core_sorted) {
    auto [a, b] = t.edges()[ce];
    const int v = (a == d.center) ? b : a;
    d.core_edge_ids.push_back(ce);
    d.branch_roots.push_back(v);
    std::vector<std::vector<int>> paths, stars;
    for (auto [u, eu] : children(v)) {
      const auto cu = children(u);
      if (cu.size() == 2 && children(cu[0].first).empty() &&
          children(cu[1].first).empty()) {
        stars.push_back({eu, cu[0].second, cu[1].second});
      } else if (cu.size() == 1) {
        const auto cw = children(cu[0].first);
        if (cw.size() != 1 || !children(cw[0].first).empty())
          throw std::invalid_argument("branch unit is neither 4-path nor 4-star");
        paths.push_back({eu, cu[0].second, cw[0].second});
      } else {
        throw std::invalid_argument("branch unit is neither 4-path nor 4-star");
      }
    }
    d.path_units.push_back(std::move(paths));
    d.star_units.push_back(std::move(stars));
  }
  return d;
}

// All size-k subsets of [0, n) in lexicographic order.
inline std::vector<std::vector<int>> small_combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  if (k == 0) out.assign(1, {});
  return out;
}

}  // namespace detail

// Direct enumeration of the union in the subtree-count argument: subtrees
// containing the full core whose branch at v_i consists of whole 4-paths and
// 4-stars matching some arrangement of (q,t), counted once per edge set.
inline BigInt count_subtrees_oracle(const Tree& t, const BranchType& bt,
                                    std::uint64_t budget = 50'000'000) {
  const auto d = detail::decompose_pte_tree(t);
  const int n = static_cast<int>(d.branch_roots.size());
  if (bt.n() != n)
    throw std::invalid_argument("branch type length must match tree arity");

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) pairs.push_back({bt.q[i], bt.t[i]});
  std::sort(pairs.begin(), pairs.end());

  std::set<std::vector<int>> seen;
  std::uint64_t generated = 0;
  do {
    // per-branch unit choices under this arrangement
    bool feasible = true;
    for (int i = 0; i < n && feasible; ++i)
      feasible = pairs[i].first <= static_cast<int>(d.path_units[i].size()) &&
                 pairs[i].second <= static_cast<int>(d.star_units[i].size());
    if (!feasible) continue;

    std::vector<int> base(d.core_edge_ids);
    std::function<void(int, std::vector<int>&)> fill =
        [&](int branch, std::vector<int>& edges) {
          if (branch == n) {
            if (generated++ >= budget)
              throw BudgetError("count_subtrees_oracle budget exceeded");
            std::vector<int> key = edges;
            std::sort(key.begin(), key.end());
            seen.insert(std::move(key));
            return;
          }
          const auto pcs = detail::small_combinations(
              static_cast<int>(d.path_units[branch].size()),
              pairs[branch].first);
          const auto scs = detail::small_combinations(
              static_cast<int>(d.star_units[branch].size()),
              pairs[branch].second);
          for (const auto& pc : pcs)
            for (const auto& sc : scs) {
              const std::size_t mark = edges.size();
              for (int u : pc)
                edges.insert(edges.end(), d.path_units[branch][u].begin(),
                             d.path_units[branch][u].end());
              for (int u : sc)
                edges.insert(edges.end(), d.star_units[branch][u].begin(),
                             d.star_units[branch][u].end());
              fill(branch + 1, edges);
              edges.resize(mark);
            }
        };
    fill(0, base);
  } while (std::next_permutation(pairs.begin(), pairs.end()));
  return BigInt(seen.size());
}

struct SubtreeCountCheck {
  bool equal = true;
  std::optional<BranchType> witness;  // first differing type, if any
};

// Compare formula counts at p and p' over every branch type with
// sum(q_i + t_i) <= k.
inline SubtreeCountCheck same_subtree_counts(int alpha, std::span<const int> p,
                                             std::span<const int> p2, int k) {
  if (p.size() != p2.size())
    throw std::invalid_argument("sequences must have equal length");
  const int n = static_cast<int>(p.size());
  SubtreeCountCheck result;
  std::vector<int> slots(2 * n, 0);
  // lexicographic walk over all (q,t) with total <= k
  std::function<bool(int, int)> rec = [&](int pos, int left) {
    if (pos == 2 * n) {
      BranchType bt(std::vector<int>(slots.begin(), slots.begin() + n),
                    std::vector<int>(slots.begin() + n, slots.end()));
      if (count_subtrees_formula(alpha, p, bt) !=
          count_subtrees_formula(alpha, p2, bt)) {
        result.equal = false;
        result.witness = std::move(bt);
        return false;
      }
      return true;
    }
    for (int v = 0; v <= left; ++v) {
      slots[pos] = v;
      if (!rec(pos + 1, left - v)) return false;
    }
    slots[pos] = 0;
    return true;
  };
  rec(0, k);
  return result;
}

// ---------------------------------------------------------------------------
// Labels and recognition
// ---------------------------------------------------------------------------

// Multiset of edge labels {theta_e}, ascending.
inline std::vector<int> label_multiset(const Tree& t) {
  auto labels = edge_labels(t);
  std::sort(labels.begin(), labels.end());
  return labels;
}

struct PteSignature {
  int alpha = 0;
  int n = 0;
  long long beta = 0;
  friend bool operator==(const PteSignature&, const PteSignature&) = default;
};

// Reconstruct the label multiset from a U_1-polynomial: the two-part terms
// (N - theta, theta) carry the labels; x_N is the empty removal.
inline std::map<int, long long> labels_from_u1(const PartitionPolynomial& u1,
                                               int total) {
  std::map<int, long long> mult;
  bool saw_full = false;
  for (const auto& [key, coeff] : u1.terms()) {
    const auto& parts = key.first.parts();
    if (key.second != 0)
      throw std::invalid_argument("U_1 of a tree has no positive y-grades");
    if (parts.size() == 1 && parts[0] == total) {
      if (coeff != 1)
        throw std::invalid_argument("x_N must have coefficient 1");
      saw_full = true;
      continue;
    }
    if (parts.size() != 2 || parts[0] + parts[1] != total)
      throw std::invalid_argument("term is not a <=2-part partition of N");
    if (coeff < 0 || coeff > BigInt(1'000'000'000'000LL))
      throw std::invalid_argument("implausible U_1 coefficient");
    mult[parts[1]] += static_cast<long long>(coeff);
  }
  if (!saw_full) throw std::invalid_argument("U_1 lacks the x_N term");
  return mult;
}

// PTE pattern match on a U_1-polynomial: returns (alpha, n, beta) iff the
// label multiset is exactly {1^(2n*alpha-beta), 2^beta, 3^(n*alpha), L^n}
// with L = 3*alpha+1, N = L*n+1 and a unique centroid (no label N/2).
inline std::optional<PteSignature> signature_from_u1(
    const PartitionPolynomial& u1, int vertex_count) {
  const auto mult = labels_from_u1(u1, vertex_count);
  long long edge_total = 0;
  for (const auto& [label, m] : mult) {
    edge_total += m;
    if (vertex_count % 2 == 0 && label == vertex_count / 2)
      return std::nullopt;  // double centroid
  }
  if (edge_total != vertex_count - 1) return std::nullopt;
  if (mult.empty()) return std::nullopt;
  const int top = mult.rbegin()->first;
  if (top < 4 || (top - 1) % 3 != 0) return std::nullopt;
  const int alpha = (top - 1) / 3;
  auto count_of = [&](int label) {
    auto it = mult.find(label);
    return it == mult.end() ? 0LL : it->second;
  };
  const long long n = count_of(top);
  if (n < 2) return std::nullopt;
  if (static_cast<long long>(vertex_count) != static_cast<long long>(top) * n + 1)
    return std::nullopt;
  const long long beta = count_of(2);
  if (beta > n * alpha) return std::nullopt;
  if (count_of(3) != n * alpha) return std::nullopt;
  if (count_of(1) != 2 * n * alpha - beta) return std::nullopt;
  for (const auto& [label, m] : mult)
    if (label != 1 && label != 2 && label != 3 && label != top)
      return std::nullopt;
  return PteSignature{alpha, static_cast<int>(n), beta};
}

// Structural recognition: decompose at the centroid into whole 4-path/4-star
// units, then confirm against the rebuilt tree's canonical form.
inline std::optional<PteShape> recognize_pte_tree(const Tree& t) {
  const auto cents = centroid(t);
  if (cents.size() != 1) return std::nullopt;
  const int c = cents[0];
  if (t.degree(c) < 2) return std::nullopt;
  const auto r = detail::root_tree(t, c);
  auto children = [&](int v) {
    std::vector<std::pair<int, int>> out;
    for (auto [u, e] : t.neighbors(v))
      if (u != r.parent[v]) out.push_back({u, e});
    return out;
  };
  std::vector<int> p;
  int alpha = -1;
  for (auto [v, ev] : children(c)) {
    int paths = 0, stars = 0;
    for (auto [u, eu] : children(v)) {
      const auto cu = children(u);
      if (cu.size() == 2 && children(cu[0].first).empty() &&
          children(cu[1].first).empty()) {
        ++stars;
      } else if (cu.size() == 1) {
        const auto cw = children(cu[0].first);
        if (cw.size() != 1 || !children(cw[0].first).empty())
          return std::nullopt;
        ++paths;
      } else {
        return std::nullopt;
      }
    }
    const int a = paths + stars;
    if (alpha < 0) alpha = a;
    if (a != alpha) return std::nullopt;
    p.push_back(paths);
  }
  if (alpha < 1) return std::nullopt;
  PteShape shape(alpha, std::move(p));
  if (canonical_form(t) != canonical_form(build_pte_tree(shape)))
    return std::nullopt;
  return shape;
}

}  // namespace utree
