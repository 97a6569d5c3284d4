#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace utree {

// All polynomial coefficients, power sums and subtree counts are exact.
using BigInt = boost::multiprecision::cpp_int;

// Thrown when an enumeration would exceed its configured budget.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

inline BigInt binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;  // exact at every step
  }
  return r;
}

inline BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Saturating uint64 binomial, used for combination ranking where only
// comparisons against a budget are needed.
inline std::uint64_t binomial_u64_sat(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n-k+i) may overflow; detect via division
    std::uint64_t f = static_cast<std::uint64_t>(n - k + i);
    if (r > UINT64_MAX / f) return UINT64_MAX;
    r = r * f / static_cast<std::uint64_t>(i);
  }
  return r;
}

}  // namespace utree
