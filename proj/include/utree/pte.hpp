#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "utree/exact.hpp"

namespace utree {

// Integer sequence in multiset normal form: stored weakly decreasing.
// Equality and the =_k relation are permutation-invariant by construction.
class IntSequence {
 public:
  explicit IntSequence(std::vector<long long> entries)
      : v_(std::move(entries)) {
    if (v_.empty()) throw std::invalid_argument("sequence must be nonempty");
    std::sort(v_.begin(), v_.end(), std::greater<long long>());
  }

  const std::vector<long long>& entries() const { return v_; }
  std::size_t size() const { return v_.size(); }
  long long min_entry() const { return v_.back(); }
  bool nonnegative() const { return v_.back() >= 0; }

  std::vector<long long> ascending() const {
    return {v_.rbegin(), v_.rend()};
  }

  // multiset equality
  friend bool operator==(const IntSequence& a, const IntSequence& b) = default;

  // canonical order: lexicographic on the ascending form
  friend bool operator<(const IntSequence& a, const IntSequence& b) {
    return std::lexicographical_compare(a.v_.rbegin(), a.v_.rend(),
                                        b.v_.rbegin(), b.v_.rend());
  }

  std::string to_string() const {
    std::string s = "(";
    const auto asc = ascending();
    for (std::size_t i = 0; i < asc.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(asc[i]);
    }
    return s + ")";
  }

 private:
  std::vector<long long> v_;
};

// (sum s_i^1, ..., sum s_i^k), exact.
inline std::vector<BigInt> power_sums(const IntSequence& s, int k) {
  if (k < 1) throw std::invalid_argument("power_sums needs k >= 1");
  std::vector<BigInt> sums(k, 0);
  for (long long e : s.entries()) {
    BigInt p = 1;
    for (int l = 0; l < k; ++l) {
      p *= e;
      sums[l] += p;
    }
  }
  return sums;
}

// a =_k b: distinct as multisets with equal power sums for exponents 1..k.
inline bool is_pte(const IntSequence& a, const IntSequence& b, int k) {
  if (a.size() != b.size())
    throw std::invalid_argument("PTE sequences must have equal length");
  if (k < 1) throw std::invalid_argument("is_pte needs k >= 1");
  if (a == b) return false;
  return power_sums(a, k) == power_sums(b, k);
}

// Largest k with a =_k b; 0 if the first power sums already differ; nullopt
// when the multisets are equal. Distinct multisets must differ at some
// exponent <= n, and the scan stops at the first difference.
inline std::optional<int> pte_degree(const IntSequence& a,
                                     const IntSequence& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("PTE sequences must have equal length");
  if (a == b) return std::nullopt;
  const int n = static_cast<int>(a.size());
  std::vector<BigInt> pow_a(a.entries().begin(), a.entries().end());
  std::vector<BigInt> pow_b(b.entries().begin(), b.entries().end());
  for (int l = 1; l <= n; ++l) {
    BigInt sa = 0, sb = 0;
    for (int i = 0; i < n; ++i) {
      if (l > 1) {
        pow_a[i] *= a.entries()[i];
        pow_b[i] *= b.entries()[i];
      }
      sa += pow_a[i];
      sb += pow_b[i];
    }
    if (sa != sb) return l - 1;
  }
  throw std::logic_error("distinct multisets with all power sums equal");
}

// Entrywise scale*s_i + shift. Preserves =_k. Nonnegative results required
// unless allow_negative (tree building needs nonnegative sequences).
inline IntSequence affine(const IntSequence& s, long long scale,
                          long long shift, bool allow_negative = false) {
  std::vector<long long> out;
  out.reserve(s.size());
  for (long long e : s.entries()) {
    const long long r = scale * e + shift;
    if (r < 0 && !allow_negative)
      throw std::invalid_argument("affine image has a negative entry");
    out.push_back(r);
  }
  return IntSequence(std::move(out));
}

// Verified PTE solution pair. degree is always re-measured, never assumed.
struct PteCertificate {
  IntSequence a;
  IntSequence b;
  int degree = 0;

  // Normal form: translate so the minimum entry over both sequences is 0,
  // order the pair ascending-lexicographically.
  PteCertificate normalized() const {
    const long long m = std::min(a.min_entry(), b.min_entry());
    IntSequence na = affine(a, 1, -m, true);
    IntSequence nb = affine(b, 1, -m, true);
    if (nb < na) std::swap(na, nb);
    return PteCertificate{std::move(na), std::move(nb), degree};
  }

  static PteCertificate make_verified(IntSequence a, IntSequence b) {
    const auto d = pte_degree(a, b);
    if (!d) throw std::invalid_argument("certificate sides are equal multisets");
    if (*d < 1) throw std::invalid_argument("pair has no common power sums");
    return PteCertificate{std::move(a), std::move(b), *d};
  }
};

// Thue-Morse split of {0,...,2^(k+1)-1} by parity of the binary digit sum;
// yields a size-2^k solution of degree k (re-measured on return).
inline PteCertificate prouhet(int k) {
  if (k < 1) throw std::invalid_argument("prouhet needs k >= 1");
  if (k > 20) throw std::invalid_argument("prouhet size guard: k <= 20");
  std::vector<long long> evil, odious;
  const long long top = 1LL << (k + 1);
  for (long long i = 0; i < top; ++i) {
    if (std::popcount(static_cast<std::uint64_t>(i)) % 2 == 0)
      evil.push_back(i);
    else
      odious.push_back(i);
  }
  auto cert = PteCertificate::make_verified(IntSequence(std::move(evil)),
                                            IntSequence(std::move(odious)));
  if (cert.degree < k)
    throw std::logic_error("Thue-Morse split fell short of its degree");
  return cert.normalized();
}

struct SearchOptions {
  std::uint64_t max_nodes = 20'000'000;  // multisets visited
};

struct SearchResult {
  std::vector<PteCertificate> certificates;
  bool complete = true;
};

namespace detail {

template <typename Fn>
void walk_multisets(int n, long long max_value, std::uint64_t budget,
                    bool& complete, Fn&& fn) {
  std::vector<long long> cur(n);
  std::uint64_t visited = 0;
  // weakly decreasing sequences over [0, max_value], colex-style recursion
  std::function<bool(int, long long)> rec = [&](int pos, long long high) {
    if (pos == n) {
      if (visited++ >= budget) {
        complete = false;
        return false;
      }
      fn(cur);
      return true;
    }
    for (long long v = high; v >= 0; --v) {
      cur[pos] = v;
      if (!rec(pos + 1, v)) return false;
    }
    return true;
  };
  rec(0, max_value);
}

}  // namespace detail

// All degree->=k solutions of size n with entries in [0, max_value],
// normalized so the minimum entry of the union is 0, deduplicated up to
// swapping sides and permutation, in canonical ascending-lex order.
inline SearchResult search_pte(int n, int k, long long max_value,
                               const SearchOptions& opts = {}) {
  if (n < 2) throw std::invalid_argument("search_pte needs size >= 2");
  if (k < 1) throw std::invalid_argument("search_pte needs degree >= 1");
  if (max_value < 0)
    throw std::invalid_argument("search_pte needs max_value >= 0");
  const std::uint64_t count =
      max_value > 1'000'000
          ? UINT64_MAX
          : binomial_u64_sat(static_cast<int>(max_value) + n, n);
  SearchResult result;
  if (count > opts.max_nodes) result.complete = false;

  // bucket multisets by their first k power sums
  std::map<std::vector<BigInt>, std::vector<IntSequence>> buckets;
  detail::walk_multisets(
      n, max_value, opts.max_nodes, result.complete,
      [&](const std::vector<long long>& entries) {
        IntSequence s{std::vector<long long>(entries)};
        buckets[power_sums(s, k)].push_back(std::move(s));
      });

  for (auto& [key, seqs] : buckets) {
    for (std::size_t i = 0; i < seqs.size(); ++i)
      for (std::size_t j = i + 1; j < seqs.size(); ++j) {
        if (std::min(seqs[i].min_entry(), seqs[j].min_entry()) != 0) continue;
        auto cert =
            PteCertificate::make_verified(seqs[i], seqs[j]).normalized();
        result.certificates.push_back(std::move(cert));
      }
  }
  std::sort(result.certificates.begin(), result.certificates.end(),
            [](const PteCertificate& x, const PteCertificate& y) {
              if (x.a < y.a) return true;
              if (y.a < x.a) return false;
              return x.b < y.b;
            });
  return result;
}

// j pairwise-distinct sequences, pairwise =_k: block mixes i*a + (j-1-i)*b of
// the prouhet pair (concatenation closure keeps power sums aligned). Wright's
// length bound is not claimed; every pair is re-verified.
inline std::vector<IntSequence> multi_pte(int j, int k) {
  if (j < 2) throw std::invalid_argument("multi_pte needs j >= 2");
  if (j > 256) throw std::invalid_argument("multi_pte size guard: j <= 256");
  const PteCertificate base = prouhet(k);
  std::vector<IntSequence> out;
  out.reserve(j);
  for (int i = 0; i < j; ++i) {
    std::vector<long long> mix;
    for (int r = 0; r < i; ++r)
      mix.insert(mix.end(), base.a.entries().begin(), base.a.entries().end());
    for (int r = 0; r < j - 1 - i; ++r)
      mix.insert(mix.end(), base.b.entries().begin(), base.b.entries().end());
    out.emplace_back(std::move(mix));
  }
  std::sort(out.begin(), out.end());
  for (std::size_t x = 0; x < out.size(); ++x)
    for (std::size_t y = x + 1; y < out.size(); ++y)
      if (!is_pte(out[x], out[y], k))
        throw std::logic_error("multi_pte pair failed verification");
  return out;
}

}  // namespace utree
