#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace utree {

// Integer partition: weakly decreasing positive parts. The empty partition
// stands for the monomial 1.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    std::sort(parts_.begin(), parts_.end(), std::greater<int>());
    if (!parts_.empty() && parts_.back() < 1)
      throw std::invalid_argument("partition parts must be positive");
  }

  Partition(std::initializer_list<int> parts)
      : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }

  long long sum() const {
    return std::accumulate(parts_.begin(), parts_.end(), 0LL);
  }

  // Canonical order: lexicographic on the weakly decreasing part vectors.
  friend auto operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }
  friend bool operator==(const Partition& a, const Partition& b) = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts_[i]);
    }
    s += ')';
    return s;
  }

 private:
  std::vector<int> parts_;
};

}  // namespace utree
