#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "restind/error.hpp"

namespace restind {

inline constexpr std::uint64_t kDefaultSieveCap = 10'000'000;
inline constexpr std::size_t kSieveSegment = std::size_t{1} << 20;

/// Calls f(p) for every prime p <= x in increasing order (segmented Eratosthenes).
template <class F>
void for_each_prime(std::uint64_t x, F&& f, std::uint64_t cap = kDefaultSieveCap) {
  if (x > cap) fail(ErrorCode::SieveCapExceeded, "x = " + std::to_string(x) + " exceeds the sieve cap " + std::to_string(cap));
  if (x < 2) return;
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (root * root > x) --root;
  while ((root + 1) * (root + 1) <= x) ++root;

  std::vector<bool> small(root + 1, true);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = false;
  }

  std::vector<char> seg(kSieveSegment);
  for (std::uint64_t lo = 2; lo <= x; lo += kSieveSegment) {
    const std::uint64_t hi = std::min<std::uint64_t>(lo + kSieveSegment - 1, x);
    std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(hi - lo + 1), 1);
    for (auto p : base) {
      if (p * p > hi) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t j = start; j <= hi; j += p) seg[j - lo] = 0;
    }
    for (std::uint64_t n = lo; n <= hi; ++n)
      if (seg[n - lo]) f(n);
  }
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t x, std::uint64_t cap = kDefaultSieveCap) {
  std::vector<std::uint64_t> out;
  for_each_prime(x, [&](std::uint64_t p) { out.push_back(p); }, cap);
  return out;
}

}  // namespace restind
