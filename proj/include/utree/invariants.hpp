#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <thread>
#include <unordered_map>
#include <vector>

#include "utree/exact.hpp"
#include "utree/graph.hpp"
#include "utree/polynomial.hpp"
#include "utree/tree.hpp"

namespace utree {

struct EnumOptions {
  int max_edges = 30;  // full-enumeration guard (u_polynomial, w_polynomial, u_f)
  std::uint64_t max_subsets = 4'000'000'000ULL;  // combination-count guard
  int threads = 1;  // identical results for any value
};

namespace detail {

// Rooted view of a candidate edge set: per position, the subtree weight below
// the edge and the DFS interval of its child endpoint. Splitting the tree at
// a removed set A then costs O(|A|^2) by inclusion over nested intervals.
struct EdgeScaffold {
  std::vector<long long> sub;
  std::vector<int> tin, tout;
  long long total = 0;
  int count = 0;
};

inline EdgeScaffold make_scaffold(const WeightedTree& wt,
                                  std::span<const int> cand) {
  const Tree& t = wt.tree();
  const auto r = root_tree(t, 0, wt.weights());
  EdgeScaffold s;
  s.total = wt.total_weight();
  s.count = static_cast<int>(cand.size());
  s.sub.resize(cand.size());
  s.tin.resize(cand.size());
  s.tout.resize(cand.size());
  for (std::size_t i = 0; i < cand.size(); ++i) {
    t.check_edge(cand[i]);
    auto [u, v] = t.edges()[cand[i]];
    const int child = (r.parent[u] == v) ? u : v;
    s.sub[i] = r.size[child];
    s.tin[i] = r.tin[child];
    s.tout[i] = r.tout[child];
  }
  return s;
}

// Parts of lambda(E \ A) for removed positions A (|A| = m): each removed edge
// keeps its subtree weight minus the weights already claimed by removed edges
// nested strictly below it; the remainder stays with the root component.
// Writes m+1 parts into out.
inline void parts_of_removed(const EdgeScaffold& s, const int* A, int m,
                             long long* out) {
  for (int i = 0; i < m; ++i) out[i] = s.sub[A[i]];
  long long root_part = s.total;
  for (int i = 0; i < m; ++i) {
    int best = -1;
    int best_tin = -1;
    const int ti = s.tin[A[i]];
    const int to = s.tout[A[i]];
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      if (s.tin[A[j]] <= ti && to <= s.tout[A[j]] && s.tin[A[j]] > best_tin) {
        best = j;
        best_tin = s.tin[A[j]];
      }
    }
    if (best >= 0)
      out[best] -= s.sub[A[i]];
    else
      root_part -= s.sub[A[i]];
  }
  out[m] = root_part;
}

struct PartKeyHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (int x : v) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

using PartCountMap =
    std::unordered_map<std::vector<int>, std::uint64_t, PartKeyHash>;

// Colex-order combination walk over [0, count) of size m, restricted to the
// rank interval [begin, end).
template <typename Fn>
void walk_combinations(int count, int m, std::uint64_t begin, std::uint64_t end,
                       Fn&& fn) {
  if (begin >= end) return;
  if (m == 0) {
    std::vector<int> empty;
    fn(empty.data());
    return;
  }
  std::vector<int> c(m);
  // unrank `begin` in colex order
  std::uint64_t r = begin;
  for (int i = m; i >= 1; --i) {
    int v = i - 1;
    while (binomial_u64_sat(v + 1, i) <= r) ++v;
    c[i - 1] = v;
    r -= binomial_u64_sat(v, i);
  }
  for (std::uint64_t rank = begin; rank < end; ++rank) {
    fn(c.data());
    // colex successor
    int i = 0;
    while (i + 1 < m && c[i] + 1 == c[i + 1]) {
      c[i] = i;
      ++i;
    }
    ++c[i];
  }
}

inline void sort_desc(long long* a, int n) {
  for (int i = 1; i < n; ++i) {
    long long key = a[i];
    int j = i - 1;
    while (j >= 0 && a[j] < key) {
      a[j + 1] = a[j];
      --j;
    }
    a[j + 1] = key;
  }
}

inline std::uint64_t subsets_up_to(int count, int max_m) {
  std::uint64_t total = 0;
  for (int m = 0; m <= max_m; ++m) {
    std::uint64_t c = binomial_u64_sat(count, m);
    if (c == UINT64_MAX || total > UINT64_MAX - c) return UINT64_MAX;
    total += c;
  }
  return total;
}

// Accumulate partition counts of lambda(E \ A) over all A with |A| = m.
// Deterministic for any thread count: per-thread maps merged by addition.
inline void census_size(const EdgeScaffold& s, int m, int threads,
                        PartCountMap& out) {
  const std::uint64_t total = binomial_u64_sat(s.count, m);
  if (total == 0) return;
  auto run = [&s, m](std::uint64_t b, std::uint64_t e, PartCountMap& acc) {
    std::vector<long long> parts(m + 1);
    std::vector<int> key;
    walk_combinations(s.count, m, b, e, [&](const int* A) {
      parts_of_removed(s, A, m, parts.data());
      sort_desc(parts.data(), m + 1);
      key.assign(parts.begin(), parts.end());
      auto it = acc.find(key);
      if (it != acc.end())
        ++it->second;
      else
        acc.emplace(key, 1);
    });
  };
  if (threads <= 1 || total < 4096) {
    run(0, total, out);
    return;
  }
  const int nt = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), total));
  std::vector<PartCountMap> local(nt);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    const std::uint64_t b = total / nt * t + std::min<std::uint64_t>(t, total % nt);
    const std::uint64_t e =
        total / nt * (t + 1) + std::min<std::uint64_t>(t + 1, total % nt);
    pool.emplace_back([&, t, b, e] { run(b, e, local[t]); });
  }
  for (auto& th : pool) th.join();
  for (auto& acc : local)
    for (auto& [k, v] : acc) out[k] += v;
}

// Count A with |A| = m and lambda(E \ A) equal to the given descending parts.
inline std::uint64_t census_target_count(const EdgeScaffold& s, int m,
                                         std::span<const long long> target,
                                         int threads) {
  const std::uint64_t total = binomial_u64_sat(s.count, m);
  if (total == 0) return 0;
  auto run = [&s, m, target](std::uint64_t b, std::uint64_t e) {
    std::vector<long long> parts(m + 1);
    std::uint64_t hits = 0;
    walk_combinations(s.count, m, b, e, [&](const int* A) {
      parts_of_removed(s, A, m, parts.data());
      sort_desc(parts.data(), m + 1);
      if (std::memcmp(parts.data(), target.data(),
                      sizeof(long long) * (m + 1)) == 0)
        ++hits;
    });
    return hits;
  };
  if (threads <= 1 || total < 4096) return run(0, total);
  const int nt = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), total));
  std::vector<std::uint64_t> local(nt, 0);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    const std::uint64_t b = total / nt * t + std::min<std::uint64_t>(t, total % nt);
    const std::uint64_t e =
        total / nt * (t + 1) + std::min<std::uint64_t>(t + 1, total % nt);
    pool.emplace_back([&, t, b, e] { local[t] = run(b, e); });
  }
  for (auto& th : pool) th.join();
  std::uint64_t hits = 0;
  for (auto h : local) hits += h;
  return hits;
}

inline PartitionPolynomial poly_from_counts(const PartCountMap& counts) {
  PartitionPolynomial poly;
  for (const auto& [parts, count] : counts)
    poly.add(Partition(parts), 0, BigInt(count));
  return poly;
}

inline std::vector<int> all_edge_ids(const Tree& t) {
  std::vector<int> ids(t.edge_count());
  for (int e = 0; e < t.edge_count(); ++e) ids[e] = e;
  return ids;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// W-polynomial (states model) — independent of the rooted-split route
// ---------------------------------------------------------------------------

// W(G,omega) = sum over A of x_lambda(A) (y-1)^(|A|-r(A)), by direct subset
// enumeration with a union-find per subset.
inline PartitionPolynomial w_polynomial(const WeightedGraph& g,
                                        const EnumOptions& opts = {}) {
  const int m = g.edge_count();
  if (m > opts.max_edges)
    throw BudgetError("w_polynomial: edge count exceeds enumeration budget");
  if (m >= 63 || (std::uint64_t(1) << m) > opts.max_subsets)
    throw BudgetError("w_polynomial: subset count exceeds enumeration budget");
  PartitionPolynomial poly;
  const int n = g.vertex_count();
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
    detail::UnionFind uf(n);
    int edges_kept = 0;
    for (int e = 0; e < m; ++e)
      if (mask >> e & 1) {
        uf.unite(g.edges()[e].first, g.edges()[e].second);
        ++edges_kept;
      }
    std::vector<long long> acc(n, 0);
    for (int v = 0; v < n; ++v) acc[uf.find(v)] += g.weights()[v];
    std::vector<int> parts;
    for (int v = 0; v < n; ++v)
      if (acc[v] > 0) parts.push_back(static_cast<int>(acc[v]));
    const int rank_a = n - uf.components();
    poly.add(Partition(std::move(parts)), edges_kept - rank_a, 1);
  }
  return poly;
}

// ---------------------------------------------------------------------------
// U-polynomials by rooted-split subset enumeration
// ---------------------------------------------------------------------------

// U_m contributions split by removed-set size: result[m] collects the terms
// x_lambda(E\A) over |A| = m, so U_k is the prefix sum.
inline std::vector<PartitionPolynomial> u_polynomials_by_size(
    const Tree& t, int max_k, const EnumOptions& opts = {}) {
  const WeightedTree wt{t};
  const auto cand = detail::all_edge_ids(t);
  const int top = std::min<int>(max_k, t.edge_count());
  if (detail::subsets_up_to(t.edge_count(), top) > opts.max_subsets)
    throw BudgetError("u-polynomial enumeration exceeds subset budget");
  const auto scaffold = detail::make_scaffold(wt, cand);
  std::vector<PartitionPolynomial> out;
  out.reserve(top + 1);
  for (int m = 0; m <= top; ++m) {
    detail::PartCountMap counts;
    detail::census_size(scaffold, m, opts.threads, counts);
    out.push_back(detail::poly_from_counts(counts));
  }
  return out;
}

// Restriction of U to removed sets of size at most k.
inline PartitionPolynomial u_k_polynomial(const Tree& t, int k,
                                          const EnumOptions& opts = {}) {
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  PartitionPolynomial poly;
  for (auto& layer : u_polynomials_by_size(t, k, opts))
    for (const auto& [key, c] : layer.terms()) poly.add(key.first, key.second, c);
  return poly;
}

// Full U-polynomial; guarded by the edge budget.
inline PartitionPolynomial u_polynomial(const Tree& t,
                                        const EnumOptions& opts = {}) {
  if (t.edge_count() > opts.max_edges)
    throw BudgetError("u_polynomial: edge count exceeds enumeration budget");
  return u_k_polynomial(t, t.edge_count(), opts);
}

// U_F(T) = sum over A subset of F of x_lambda(E\A), weighted version.
inline PartitionPolynomial u_f_polynomial(const WeightedTree& wt,
                                          std::span<const int> F,
                                          const EnumOptions& opts = {}) {
  const int fs = static_cast<int>(F.size());
  if (fs > opts.max_edges)
    throw BudgetError("u_f_polynomial: |F| exceeds enumeration budget");
  {
    std::vector<int> f(F.begin(), F.end());
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end())
      throw std::invalid_argument("duplicate edge id in F");
  }
  if (detail::subsets_up_to(fs, fs) > opts.max_subsets)
    throw BudgetError("u_f_polynomial: subset count exceeds budget");
  const auto scaffold = detail::make_scaffold(wt, F);
  PartitionPolynomial poly;
  for (int m = 0; m <= fs; ++m) {
    detail::PartCountMap counts;
    detail::census_size(scaffold, m, opts.threads, counts);
    for (const auto& [parts, count] : counts)
      poly.add(Partition(parts), 0, BigInt(count));
  }
  return poly;
}

inline PartitionPolynomial u_f_polynomial(const Tree& t,
                                          std::span<const int> F,
                                          const EnumOptions& opts = {}) {
  return u_f_polynomial(WeightedTree{t}, F, opts);
}

// Coefficient of x_target in U (equivalently in any U_m with m >= parts-1),
// counted directly without materializing the polynomial. For a tree, only
// removed sets of size parts-1 can produce the target partition.
inline BigInt u_coefficient_direct(const Tree& t, const Partition& target,
                                   const EnumOptions& opts = {}) {
  if (target.sum() != t.vertex_count()) return 0;
  const int m = static_cast<int>(target.size()) - 1;
  if (m < 0 || m > t.edge_count()) return 0;
  if (binomial_u64_sat(t.edge_count(), m) > opts.max_subsets)
    throw BudgetError("u_coefficient_direct: subset count exceeds budget");
  const WeightedTree wt{t};
  const auto cand = detail::all_edge_ids(t);
  const auto scaffold = detail::make_scaffold(wt, cand);
  std::vector<long long> want(target.parts().begin(), target.parts().end());
  return BigInt(
      detail::census_target_count(scaffold, m, want, opts.threads));
}

// Stored coefficient of x_p (y-grade 0) in a computed polynomial.
inline BigInt coefficient(const PartitionPolynomial& poly, const Partition& p) {
  return poly.coefficient(p, 0);
}

}  // namespace utree
