#ifndef CHARMOMENT_TESTS_ORACLES_HPP
#define CHARMOMENT_TESTS_ORACLES_HPP

// Test-side oracles, deliberately independent of the library paths they
// check: trial-division factorization and Euler's-criterion symbols.

#include <cstdint>
#include <utility>
#include <vector>

namespace oracles {

inline uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = static_cast<uint64_t>(static_cast<unsigned __int128>(r) * a % m);
    a = static_cast<uint64_t>(static_cast<unsigned __int128>(a) * a % m);
    e >>= 1;
  }
  return r;
}

inline int legendre_euler(uint64_t a, uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

inline std::vector<std::pair<uint64_t, unsigned>> trial_factor(uint64_t n) {
  std::vector<std::pair<uint64_t, unsigned>> f;
  for (uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

inline int jacobi_via_euler(uint64_t a, uint64_t m) {
  if (m == 1) return 1;
  int r = 1;
  for (auto [p, e] : trial_factor(m))
    for (unsigned i = 0; i < e; ++i) r *= legendre_euler(a, p);
  return r;
}

inline uint64_t kernel_by_factorization(uint64_t n) {
  uint64_t k = 1;
  for (auto [p, e] : trial_factor(n))
    if (e & 1) k *= p;
  return k;
}

} // namespace oracles

#endif
