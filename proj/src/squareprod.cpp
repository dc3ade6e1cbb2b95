#include "charmoment/squareprod.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "charmoment/arith.hpp"
#include "charmoment/rational.hpp"

namespace charmoment {

namespace {

void check_span(uint64_t u, uint64_t h) {
  if (h < 1) throw std::domain_error("squareprod: h must be >= 1");
  if (u > kMaxEndpoint - h) throw std::length_error("squareprod: u+h exceeds the 2^62 capacity");
}

bool brute_budget_ok(uint64_t h, unsigned t) {
  double cost = std::pow(static_cast<double>(h), static_cast<double>(t));
  return cost <= 1e8;
}

// Depth-first over tuple slots with running products. Elements fit in
// 62 bits, so pairs fit u128; deeper products go through mpz.
uint64_t brute_rec(uint64_t u, uint64_t h, unsigned t, unsigned depth, const Int& prod) {
  if (depth == t) {
    return mpz_perfect_square_p(prod.get_mpz_t()) ? 1 : 0;
  }
  uint64_t count = 0;
  Int next;
  for (uint64_t j = 0; j < h; ++j) {
    next = prod * Int(static_cast<unsigned long>(u + 1 + j));
    count += brute_rec(u, h, t, depth + 1, next);
  }
  return count;
}

} // namespace

uint64_t r_count_brute(uint64_t u, uint64_t h, unsigned t) {
  check_span(u, h);
  if (t < 1) throw std::domain_error("r_count_brute: t must be >= 1");
  if (!brute_budget_ok(h, t))
    throw std::length_error("r_count_brute: h^t exceeds the 10^8 enumeration budget");

  if (t == 2) {
    // u128 fast path: pair products of 62-bit elements fit in 124 bits
    uint64_t count = 0;
    for (uint64_t i = 0; i < h; ++i)
      for (uint64_t j = 0; j < h; ++j) {
        unsigned __int128 prod =
            static_cast<unsigned __int128>(u + 1 + i) * (u + 1 + j);
        if (is_square_u128(prod)) ++count;
      }
    return count;
  }
  return brute_rec(u, h, t, 0, Int(1));
}

uint64_t r2_structured(uint64_t u, uint64_t h) {
  check_span(u, h);
  KernelTable kt = kernel_table(u, h);
  std::vector<uint64_t> kernels = kt.kernels;
  std::sort(kernels.begin(), kernels.end());
  uint64_t total = 0;
  size_t i = 0;
  while (i < kernels.size()) {
    size_t j = i;
    while (j < kernels.size() && kernels[j] == kernels[i]) ++j;
    uint64_t c = j - i;
    total += c * c;
    i = j;
  }
  return total;
}

uint64_t r_count_kernel(uint64_t u, uint64_t h, unsigned t) {
  check_span(u, h);
  if (t != 2 && t != 4) throw std::domain_error("r_count_kernel: t must be 2 or 4");
  if (t == 2) return r2_structured(u, h);
  if (h > (uint64_t(1) << 13))
    throw std::length_error("r_count_kernel: h exceeds the 2^13 budget for t = 4");

  KernelTable kt = kernel_table(u, h);
  // kernels of pair products; kappa(n) <= n <= 2^62 keeps products in u128
  size_t n = static_cast<size_t>(h);
  std::vector<unsigned __int128> keys(n * n);
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < static_cast<int64_t>(n); ++i) {
    for (size_t j = 0; j < n; ++j) {
      uint64_t k1 = kt.kernels[static_cast<size_t>(i)];
      uint64_t k2 = kt.kernels[j];
      uint64_t g = std::gcd(k1, k2);
      keys[static_cast<size_t>(i) * n + j] =
          static_cast<unsigned __int128>(k1 / g) * (k2 / g);
    }
  }
  std::sort(keys.begin(), keys.end());
  uint64_t total = 0;
  size_t i = 0;
  while (i < keys.size()) {
    size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    uint64_t c = j - i;
    total += c * c;
    i = j;
  }
  return total;
}

std::vector<ConjectureRow> conjecture_scan(const std::vector<uint64_t>& us,
                                           const std::vector<uint64_t>& hs, unsigned t) {
  if (t != 2 && t != 4) throw std::domain_error("conjecture_scan: t must be 2 or 4");
  std::vector<ConjectureRow> rows;
  for (uint64_t u : us)
    for (uint64_t h : hs) {
      ConjectureRow row;
      row.u = u;
      row.h = h;
      row.t = t;
      row.count = r_count_kernel(u, h, t);
      double lh = std::log(static_cast<double>(h));
      row.exponent = (h > 1) ? std::log(static_cast<double>(row.count)) / lh : 0.0;
      row.ratio = static_cast<double>(row.count) /
                  std::pow(static_cast<double>(h), t / 2.0);
      row.hlogh_ratio = static_cast<double>(row.count) /
                          (static_cast<double>(h) * std::log(static_cast<double>(h + 2)));
      rows.push_back(row);
    }
  return rows;
}

} // namespace charmoment
