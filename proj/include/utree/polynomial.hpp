#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "utree/exact.hpp"
#include "utree/partition.hpp"

namespace utree {

// Sparse exact polynomial in the monomials x_lambda * (y-1)^g, indexed by
// (partition, g). For trees every stored g is 0; the states model on graphs
// with cycles produces positive grades.
class PartitionPolynomial {
 public:
  using Key = std::pair<Partition, int>;  // (partition, y_grade)
  using TermMap = std::map<Key, BigInt>;

  PartitionPolynomial() = default;

  void add(Partition p, int y_grade, BigInt delta) {
    if (delta == 0) return;
    Key key{std::move(p), y_grade};
    auto [it, fresh] = terms_.try_emplace(std::move(key), std::move(delta));
    if (!fresh) {
      it->second += delta;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void add(Partition p, BigInt delta) { add(std::move(p), 0, std::move(delta)); }

  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  BigInt coefficient(const Partition& p, int y_grade = 0) const {
    auto it = terms_.find(Key{p, y_grade});
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  // Sum of all coefficients; equals the number of enumerated edge subsets
  // for the restricted U-polynomials.
  BigInt total_mass() const {
    BigInt m = 0;
    for (const auto& [k, c] : terms_) m += c;
    return m;
  }

  // Every y-grade zero (true for forests).
  bool pure_x() const {
    for (const auto& [k, c] : terms_)
      if (k.second != 0) return false;
    return true;
  }

  // Evaluation with every x_i set to 1; y given. Used for the states-model
  // sanity identity sum over subsets = 2^|E|.
  BigInt evaluate_all_x1(const BigInt& y) const {
    BigInt r = 0;
    for (const auto& [k, c] : terms_) {
      BigInt t = c;
      for (int g = 0; g < k.second; ++g) t *= (y - 1);
      r += t;
    }
    return r;
  }

  friend bool operator==(const PartitionPolynomial& a,
                         const PartitionPolynomial& b) {
    return a.terms_ == b.terms_;
  }

  // Canonical serialization: terms in map order (partitions lexicographic,
  // then y-grade), coefficients as decimal strings. Byte-stable.
  std::string canonical_json() const {
    std::ostringstream os;
    os << "{\"terms\":[";
    bool first = true;
    for (const auto& [key, coeff] : terms_) {
      if (!first) os << ',';
      first = false;
      os << "{\"partition\":[";
      const auto& parts = key.first.parts();
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) os << ',';
        os << parts[i];
      }
      os << "],\"ypow\":" << key.second << ",\"coeff\":\"" << coeff << "\"}";
    }
    os << "]}";
    return os.str();
  }

  // FNV-1a 64-bit over the canonical serialization, as a fixed-width hex
  // string. Stable across platforms and thread counts.
  std::string content_hash() const {
    const std::string s = canonical_json();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
      out[i] = hex[h & 0xf];
      h >>= 4;
    }
    return out;
  }

 private:
  TermMap terms_;
};

struct TermDiff {
  Partition partition;
  int y_grade = 0;
  BigInt lhs;
  BigInt rhs;
};

inline bool poly_equal(const PartitionPolynomial& a,
                       const PartitionPolynomial& b) {
  return a == b;
}

// Exact term-by-term difference in canonical order.
inline std::vector<TermDiff> poly_diff(const PartitionPolynomial& a,
                                       const PartitionPolynomial& b) {
  std::vector<TermDiff> out;
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->first < ib->first)) {
      out.push_back({ia->first.first, ia->first.second, ia->second, 0});
      ++ia;
    } else if (ia == ea || ib->first < ia->first) {
      out.push_back({ib->first.first, ib->first.second, 0, ib->second});
      ++ib;
    } else {
      if (ia->second != ib->second)
        out.push_back({ia->first.first, ia->first.second, ia->second,
                       ib->second});
      ++ia;
      ++ib;
    }
  }
  return out;
}

}  // namespace utree
