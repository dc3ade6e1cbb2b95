#include "charmoment/charsum.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace charmoment {

namespace {

void check_modulus(uint64_t q) {
  if (q < 3 || (q & 1) == 0)
    throw std::invalid_argument("char_sum: modulus must be odd and >= 3");
}

// Deterministic pairwise reduction; order is fixed by the array layout.
double pairwise_sum(const double* v, size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = v[0];
    for (size_t i = 1; i < n; ++i) s += v[i];
    return s;
  }
  size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

Int int_from_u128(unsigned __int128 v) {
  Int hi(static_cast<unsigned long>(v >> 64));
  hi <<= 64;
  return hi + Int(static_cast<unsigned long>(v & ~uint64_t(0)));
}

// |S|^{2s} for one prime, exact.
Int abs_pow_2s(long long s_val, unsigned s) {
  unsigned __int128 sq =
      static_cast<unsigned __int128>(static_cast<__int128>(s_val) * s_val);
  if (s == 1) return int_from_u128(sq);
  if (s == 2 && sq < (static_cast<unsigned __int128>(1) << 63)) return int_from_u128(sq * sq);
  Int b = int_from_u128(sq);
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), s);
  return r;
}

MomentResult moment_impl(const PrimeRange& pr, const WeightSequence& w, unsigned s,
                         ClassFilter filter, bool parallel) {
  if (s < 1) throw std::domain_error("moment: s must be >= 1");
  MomentResult res;
  res.s = s;
  res.exact = (w.mode == WeightMode::ExactInt);

  for (uint64_t p : pr.primes)
    if (p >= 3) res.primes.push_back(p);
  if (res.primes.empty()) {
    res.empty_range_warning = true;
    return res;
  }

  int64_t np = static_cast<int64_t>(res.primes.size());
  if (res.exact) {
    res.sums_int.assign(res.primes.size(), 0);
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
    for (int64_t i = 0; i < np; ++i)
      res.sums_int[static_cast<size_t>(i)] = char_sum_int(res.primes[static_cast<size_t>(i)], w, filter);
    for (size_t i = 0; i < res.sums_int.size(); ++i)
      res.value += abs_pow_2s(res.sums_int[i], s);
  } else {
    res.sums_cpx.assign(res.primes.size(), {0.0, 0.0});
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
    for (int64_t i = 0; i < np; ++i)
      res.sums_cpx[static_cast<size_t>(i)] = char_sum_complex(res.primes[static_cast<size_t>(i)], w, filter);
    std::vector<double> pows(res.primes.size());
    for (size_t i = 0; i < pows.size(); ++i)
      pows[i] = std::pow(std::norm(res.sums_cpx[i]), static_cast<double>(s));
    res.value_c = pairwise_sum(pows.data(), pows.size());
  }
  return res;
}

} // namespace

long long char_sum_int(uint64_t q, const WeightSequence& w, ClassFilter filter) {
  check_modulus(q);
  if (w.mode != WeightMode::ExactInt)
    throw std::invalid_argument("char_sum_int: weights are not in exact-int mode");
  long long acc = 0;
  for (uint64_t j = 0; j < w.h; ++j) {
    int8_t a = w.ivals[static_cast<size_t>(j)];
    if (a == 0) continue;
    uint64_t n = w.u + 1 + j;
    if (!filter_hits(filter, n)) continue;
    acc += static_cast<long long>(a) * jacobi_reduced(n % q, q);
  }
  return acc;
}

std::complex<double> char_sum_complex(uint64_t q, const WeightSequence& w, ClassFilter filter) {
  check_modulus(q);
  if (w.mode == WeightMode::ExactInt)
    return {static_cast<double>(char_sum_int(q, w, filter)), 0.0};
  std::complex<double> acc(0.0, 0.0);
  for (uint64_t j = 0; j < w.h; ++j) {
    uint64_t n = w.u + 1 + j;
    if (!filter_hits(filter, n)) continue;
    int chi = jacobi_reduced(n % q, q);
    if (chi == 0) continue;
    acc += static_cast<double>(chi) * w.cvals[static_cast<size_t>(j)];
  }
  return acc;
}

MomentResult moment(const PrimeRange& pr, const WeightSequence& w, unsigned s, ClassFilter filter) {
  return moment_impl(pr, w, s, filter, true);
}

MomentResult moment_serial(const PrimeRange& pr, const WeightSequence& w, unsigned s,
                           ClassFilter filter) {
  return moment_impl(pr, w, s, filter, false);
}

Int moment_pair_expand(const PrimeRange& pr, const WeightSequence& w) {
  if (w.mode != WeightMode::ExactInt)
    throw std::invalid_argument("moment_pair_expand: complex mode unsupported");
  if (w.h > (uint64_t(1) << 12))
    throw std::length_error("moment_pair_expand: h exceeds the 2^12 budget");
  Int total(0);
  for (uint64_t jm = 0; jm < w.h; ++jm) {
    int8_t am = w.ivals[static_cast<size_t>(jm)];
    if (am == 0) continue;
    uint64_t m = w.u + 1 + jm;
    for (uint64_t jn = 0; jn < w.h; ++jn) {
      int8_t an = w.ivals[static_cast<size_t>(jn)];
      if (an == 0) continue;
      uint64_t n = w.u + 1 + jn;
      long long inner = 0;
      for (uint64_t p : pr.primes) {
        if (p < 3) continue;
        uint64_t mn = static_cast<uint64_t>(
            static_cast<unsigned __int128>(m % p) * (n % p) % p);
        inner += jacobi_reduced(mn, p);
      }
      total += static_cast<long>(static_cast<long long>(am) * an * inner);
    }
  }
  return total;
}

DyadicDecomposition dyadic_decompose(const WeightSequence& w) {
  if (w.h < 1) throw std::domain_error("dyadic_decompose: h must be >= 1");
  DyadicDecomposition d;
  // largest ell with 4^ell <= h, i.e. 2^ell <= sqrt(h) < 2^(ell+1)
  unsigned ell = 0;
  while ((uint64_t(1) << (2 * (ell + 1))) <= w.h) ++ell;
  d.ell = ell;

  d.remainder = w;
  if (w.mode == WeightMode::ExactInt)
    std::fill(d.remainder.ivals.begin(), d.remainder.ivals.end(), int8_t(0));
  else
    std::fill(d.remainder.cvals.begin(), d.remainder.cvals.end(), std::complex<double>(0.0, 0.0));

  d.parts.reserve(ell + 1);
  for (unsigned i = 0; i <= ell; ++i) {
    DyadicPart part;
    part.i = i;
    uint64_t ui = w.u >> i;
    uint64_t hi_end = (w.u + w.h) >> i;
    uint64_t hi = hi_end - ui;
    WeightSequence beta;
    beta.u = ui;
    beta.h = hi;
    beta.mode = w.mode;
    beta.preset = w.preset;
    beta.seed = w.seed;
    if (w.mode == WeightMode::ExactInt)
      beta.ivals.assign(static_cast<size_t>(hi), 0);
    else
      beta.cvals.assign(static_cast<size_t>(hi), {0.0, 0.0});
    part.beta = std::move(beta);
    d.parts.push_back(std::move(part));
  }

  for (uint64_t j = 0; j < w.h; ++j) {
    uint64_t n = w.u + 1 + j;
    auto [i, odd] = two_adic_split(n);
    if (i <= ell) {
      DyadicPart& part = d.parts[i];
      size_t slot = static_cast<size_t>(odd - part.beta.u - 1);
      if (w.mode == WeightMode::ExactInt)
        part.beta.ivals[slot] = w.ivals[static_cast<size_t>(j)];
      else
        part.beta.cvals[slot] = w.cvals[static_cast<size_t>(j)];
      ++part.covered;
    } else {
      if (w.mode == WeightMode::ExactInt)
        d.remainder.ivals[static_cast<size_t>(j)] = w.ivals[static_cast<size_t>(j)];
      else
        d.remainder.cvals[static_cast<size_t>(j)] = w.cvals[static_cast<size_t>(j)];
      ++d.remainder_count;
    }
  }
  return d;
}

long long dyadic_recompose_int(uint64_t q, const DyadicDecomposition& d) {
  check_modulus(q);
  int two_sym = jacobi_reduced(2 % q, q);
  long long acc = 0;
  int pow2 = 1;
  for (const DyadicPart& part : d.parts) {
    acc += static_cast<long long>(pow2) * char_sum_int(q, part.beta, ClassFilter::Odd);
    pow2 *= two_sym;
  }
  acc += char_sum_int(q, d.remainder, ClassFilter::All);
  return acc;
}

} // namespace charmoment
