#ifndef CHARMOMENT_ARITH_HPP
#define CHARMOMENT_ARITH_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace charmoment {

// Interval endpoints and moduli are capped at 62 bits; products of up to
// four interval elements are square-tested in wider scratch integers.
inline constexpr uint64_t kMaxEndpoint = uint64_t(1) << 62;

// Jacobi symbol core: m odd >= 1, a already reduced into [0, m).
// Binary algorithm: bulk 2-extraction via countr_zero plus the reciprocity
// flip, so the loop divides only by the shrinking second argument.
inline int jacobi_reduced(uint64_t a, uint64_t m) {
  if (m == 1) return 1;
  if (a == 0) return 0;
  int t = 0; // parity of accumulated sign flips
  while (a != 0) {
    int z = std::countr_zero(a);
    a >>= z;
    if (z & 1) {
      uint64_t r = m & 7;
      if (r == 3 || r == 5) t ^= 1; // (2/m) = -1 iff m = +-3 mod 8
    }
    if ((a & 3) == 3 && (m & 3) == 3) t ^= 1; // quadratic reciprocity
    uint64_t next = m % a;
    m = a;
    a = next;
  }
  if (m != 1) return 0; // shared factor
  return t ? -1 : 1;
}

// Jacobi symbol (a/m) for odd m >= 1; a is reduced mod m internally.
// For prime m this is the Legendre symbol. jacobi(a, 1) = 1 for all a.
inline int jacobi(long long a, uint64_t m) {
  if (m == 0 || (m & 1) == 0)
    throw std::invalid_argument("jacobi: modulus must be odd and positive");
  long long r = a % static_cast<long long>(m);
  if (r < 0) r += static_cast<long long>(m);
  return jacobi_reduced(static_cast<uint64_t>(r), m);
}

// Kronecker symbol (N/q) for odd N >= 1 and q >= 1. Extends the Jacobi
// symbol to even q via (N/2) = +1 for N = +-1 mod 8, -1 for N = +-3 mod 8;
// completely multiplicative in N, and (N/q) = (q/N) when N = 1 mod 4.
inline int kronecker_odd_top(uint64_t N, uint64_t q) {
  int v = std::countr_zero(q);
  uint64_t qo = q >> v;
  int s = 1;
  if (v & 1) {
    uint64_t r = N & 7;
    if (r == 3 || r == 5) s = -1;
  }
  return s * jacobi_reduced(N % qo, qo);
}

inline uint64_t isqrt_u64(uint64_t n) {
  if (n == 0) return 0;
  auto r = static_cast<uint64_t>(__builtin_sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline unsigned __int128 isqrt_u128(unsigned __int128 n) {
  if (n <= ~uint64_t(0)) return isqrt_u64(static_cast<uint64_t>(n));
  // Newton iteration from a one-sided overestimate.
  int bits = 128 - std::countl_zero(static_cast<uint64_t>(n >> 64));
  unsigned __int128 x = static_cast<unsigned __int128>(1) << ((bits + 65) / 2 + 1);
  for (;;) {
    unsigned __int128 y = (x + n / x) >> 1;
    if (y >= x) break;
    x = y;
  }
  return x;
}

// True iff n is a perfect square; exact, integer-square-root based.
inline bool is_square(uint64_t n) {
  uint64_t r = isqrt_u64(n);
  return r * r == n;
}

inline bool is_square_u128(unsigned __int128 n) {
  unsigned __int128 r = isqrt_u128(n);
  return r * r == n;
}

struct TwoAdicSplit {
  unsigned order;  // i with n = 2^i * odd
  uint64_t odd;
};

// n = 2^i * m with m odd, i maximal.
inline TwoAdicSplit two_adic_split(uint64_t n) {
  if (n < 1) throw std::domain_error("two_adic_split: n must be >= 1");
  unsigned i = static_cast<unsigned>(std::countr_zero(n));
  return {i, n >> i};
}

// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime_u64(uint64_t n);

// All primes in [lo, hi], strictly increasing.
struct PrimeRange {
  uint64_t lo = 0;
  uint64_t hi = 0;
  std::vector<uint64_t> primes;
};

// Segmented sieve over [lo, hi]; memory O(sqrt(hi) + segment).
// The parallel version sieves segments concurrently and merges them in
// segment order, so its output is bit-identical to the serial one.
PrimeRange primes_in(uint64_t lo, uint64_t hi);
PrimeRange primes_in_serial(uint64_t lo, uint64_t hi);

// Squarefree kernels kappa(n) and 2-adic orders for n in (u, u+h].
// kappa(n) is the product of primes dividing n to an odd power, so
// n / kappa(n) is a perfect square and kappa(n) = 1 iff n is a square.
struct KernelTable {
  uint64_t u = 0;
  uint64_t h = 0;
  std::vector<uint64_t> kernels;     // kernels[j] = kappa(u+1+j)
  std::vector<uint32_t> valuations;  // valuations[j] = v2(u+1+j)

  bool is_square_entry(size_t j) const { return kernels[j] == 1; }
};

// Interval sieve by primes p <= sqrt(u+h), dividing out full prime powers
// and tracking exponent parity; the unfactored remainder of each n is 1 or
// a single prime. No per-element factorization.
KernelTable kernel_table(uint64_t u, uint64_t h);
KernelTable kernel_table_serial(uint64_t u, uint64_t h);

} // namespace charmoment

#endif
