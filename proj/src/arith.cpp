#include "charmoment/arith.hpp"

#include <omp.h>

#include <algorithm>
#include <cstring>

namespace charmoment {

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

// Odd-only byte sieve of [2, n]; returns the primes.
std::vector<uint64_t> simple_primes_upto(uint64_t n) {
  std::vector<uint64_t> primes;
  if (n < 2) return primes;
  primes.push_back(2);
  if (n < 3) return primes;
  // flags[i] covers the odd number 2i+3
  size_t count = static_cast<size_t>((n - 1) / 2);
  std::vector<uint8_t> flags(count, 1);
  for (uint64_t p = 3; p * p <= n; p += 2) {
    if (!flags[(p - 3) / 2]) continue;
    for (uint64_t q = p * p; q <= n; q += 2 * p) flags[(q - 3) / 2] = 0;
  }
  for (size_t i = 0; i < count; ++i)
    if (flags[i]) primes.push_back(2 * i + 3);
  return primes;
}

constexpr uint64_t kSegment = uint64_t(1) << 18;

// Sieve one closed segment [lo, hi] using the precomputed base primes.
void sieve_segment(uint64_t lo, uint64_t hi, const std::vector<uint64_t>& base,
                   std::vector<uint64_t>& out) {
  size_t len = static_cast<size_t>(hi - lo + 1);
  std::vector<uint8_t> flags(len, 1);
  for (uint64_t p : base) {
    if (p * p > hi) break;
    uint64_t first = std::max(p * p, ((lo + p - 1) / p) * p);
    for (uint64_t q = first; q <= hi; q += p) flags[static_cast<size_t>(q - lo)] = 0;
  }
  for (size_t i = 0; i < len; ++i) {
    uint64_t n = lo + i;
    if (flags[i] && n >= 2) out.push_back(n);
  }
}

PrimeRange primes_in_impl(uint64_t lo_arg, uint64_t hi, bool parallel) {
  if (hi < lo_arg) throw std::invalid_argument("primes_in: empty range (hi < lo)");
  if (hi > kMaxEndpoint) throw std::length_error("primes_in: hi exceeds the 2^62 capacity");
  PrimeRange pr;
  pr.lo = lo_arg;
  pr.hi = hi;
  uint64_t lo = std::max<uint64_t>(lo_arg, 2);
  if (lo > hi) return pr;

  std::vector<uint64_t> base = simple_primes_upto(isqrt_u64(hi));
  uint64_t nseg = (hi - lo) / kSegment + 1;

  if (!parallel || nseg == 1) {
    for (uint64_t k = 0; k < nseg; ++k) {
      uint64_t slo = lo + k * kSegment;
      uint64_t shi = std::min(hi, slo + kSegment - 1);
      sieve_segment(slo, shi, base, pr.primes);
    }
    return pr;
  }

  std::vector<std::vector<uint64_t>> parts(nseg);
#pragma omp parallel for schedule(dynamic)
  for (int64_t k = 0; k < static_cast<int64_t>(nseg); ++k) {
    uint64_t slo = lo + static_cast<uint64_t>(k) * kSegment;
    uint64_t shi = std::min(hi, slo + kSegment - 1);
    sieve_segment(slo, shi, base, parts[static_cast<size_t>(k)]);
  }
  for (auto& part : parts)
    pr.primes.insert(pr.primes.end(), part.begin(), part.end());
  return pr;
}

// Kernel-sieve one block of indices [j0, j1) of the interval (u, u+h].
void kernel_block(uint64_t u, size_t j0, size_t j1, const std::vector<uint64_t>& base,
                  KernelTable& kt) {
  size_t len = j1 - j0;
  std::vector<uint64_t> rem(len);
  for (size_t j = 0; j < len; ++j) {
    rem[j] = u + 1 + (j0 + j);
    kt.kernels[j0 + j] = 1;
  }
  uint64_t blo = u + 1 + j0;      // first n in block
  uint64_t bhi = u + j1;          // last n in block
  for (uint64_t p : base) {
    if (p > bhi) break;
    uint64_t first = ((blo + p - 1) / p) * p;
    for (uint64_t n = first; n <= bhi; n += p) {
      size_t j = static_cast<size_t>(n - blo);
      uint64_t r = rem[j];
      uint32_t e = 0;
      while (r % p == 0) {
        r /= p;
        ++e;
      }
      rem[j] = r;
      if (e & 1) kt.kernels[j0 + j] *= p;
      if (p == 2) kt.valuations[j0 + j] = e;
    }
  }
  // Leftover is 1 or a single prime > sqrt(u+h), to the first power.
  for (size_t j = 0; j < len; ++j)
    if (rem[j] > 1) kt.kernels[j0 + j] *= rem[j];
}

KernelTable kernel_table_impl(uint64_t u, uint64_t h, bool parallel) {
  if (h < 1) throw std::domain_error("kernel_table: h must be >= 1");
  if (u > kMaxEndpoint - h) throw std::length_error("kernel_table: u+h exceeds the 2^62 capacity");
  KernelTable kt;
  kt.u = u;
  kt.h = h;
  kt.kernels.assign(static_cast<size_t>(h), 1);
  kt.valuations.assign(static_cast<size_t>(h), 0);
  std::vector<uint64_t> base = simple_primes_upto(isqrt_u64(u + h));

  size_t n = static_cast<size_t>(h);
  size_t block = static_cast<size_t>(std::min<uint64_t>(h, kSegment));
  size_t nblocks = (n + block - 1) / block;
  if (!parallel || nblocks == 1) {
    for (size_t b = 0; b < nblocks; ++b)
      kernel_block(u, b * block, std::min(n, (b + 1) * block), base, kt);
    return kt;
  }
#pragma omp parallel for schedule(dynamic)
  for (int64_t b = 0; b < static_cast<int64_t>(nblocks); ++b) {
    size_t j0 = static_cast<size_t>(b) * block;
    kernel_block(u, j0, std::min(n, j0 + block), base, kt);
  }
  return kt;
}

} // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int r = std::countr_zero(d);
  d >>= r;
  // Deterministic base set below 2^64.
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeRange primes_in(uint64_t lo, uint64_t hi) { return primes_in_impl(lo, hi, true); }
PrimeRange primes_in_serial(uint64_t lo, uint64_t hi) { return primes_in_impl(lo, hi, false); }

KernelTable kernel_table(uint64_t u, uint64_t h) { return kernel_table_impl(u, h, true); }
KernelTable kernel_table_serial(uint64_t u, uint64_t h) { return kernel_table_impl(u, h, false); }

} // namespace charmoment
