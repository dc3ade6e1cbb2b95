#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "charmoment/charsum.hpp"
#include "charmoment/rng.hpp"

using namespace charmoment;

TEST_CASE("char_sum examples modulo 7") {
  CHECK(char_sum_int(7, WeightSequence::unit(0, 6), ClassFilter::All) == 0);
  CHECK(char_sum_int(7, WeightSequence::unit(0, 3), ClassFilter::All) == 1);
  CHECK(char_sum_int(7, WeightSequence::unit(0, 6), ClassFilter::Odd) == -1);
  CHECK_THROWS_AS(char_sum_int(8, WeightSequence::unit(0, 3), ClassFilter::All),
                  std::invalid_argument);
}

TEST_CASE("class split and filter conservation") {
  for (uint64_t u : {0ULL, 5ULL, 1000ULL})
    for (uint64_t h : {1ULL, 7ULL, 64ULL}) {
      WeightSequence w = WeightSequence::rademacher(u, h, 9);
      for (uint64_t q : {3ULL, 7ULL, 101ULL}) {
        long long odd = char_sum_int(q, w, ClassFilter::Odd);
        long long plus = char_sum_int(q, w, ClassFilter::Plus1Mod4);
        long long minus = char_sum_int(q, w, ClassFilter::Minus1Mod4);
        CHECK(odd == plus + minus);
      }
      size_t plus = 0, minus = 0, even = 0;
      for (uint64_t j = 0; j < h; ++j) {
        uint64_t n = u + 1 + j;
        plus += filter_hits(ClassFilter::Plus1Mod4, n);
        minus += filter_hits(ClassFilter::Minus1Mod4, n);
        even += !filter_hits(ClassFilter::Odd, n);
      }
      CHECK(plus + minus + even == h);
    }
}

TEST_CASE("shift consistency: zero-padding to the origin changes nothing") {
  WeightSequence w = WeightSequence::rademacher(37, 25, 4);
  std::vector<int8_t> padded(static_cast<size_t>(37 + 25), 0);
  for (size_t j = 0; j < 25; ++j) padded[37 + j] = w.ivals[j];
  WeightSequence wt = WeightSequence::from_ints(0, 37 + 25, padded);
  for (uint64_t q : {3ULL, 5ULL, 49ULL, 1001ULL})
    CHECK(char_sum_int(q, w, ClassFilter::All) == char_sum_int(q, wt, ClassFilter::All));
}

TEST_CASE("moment examples") {
  PrimeRange pr = primes_in(10, 20);
  WeightSequence w = WeightSequence::unit(2, 2);
  MomentResult mr = moment(pr, w, 1, ClassFilter::All);
  CHECK(mr.value == 8);
  CHECK(mr.sums_int == std::vector<long long>{2, 2, 0, 0});

  CHECK(moment(pr, WeightSequence::zero(2, 2), 1, ClassFilter::All).value == 0);

  PrimeRange seven{7, 7, {7}};
  CHECK(moment(seven, WeightSequence::unit(0, 3), 2, ClassFilter::All).value == 1);

  PrimeRange empty{14, 16, {}};
  MomentResult none = moment(empty, w, 1, ClassFilter::All);
  CHECK(none.value == 0);
  CHECK(none.empty_range_warning);
}

TEST_CASE("moment equals the pair-expansion oracle") {
  for (uint64_t Q : {50ULL, 200ULL, 2000ULL})
    for (uint64_t h : {2ULL, 8ULL, 32ULL})
      for (uint64_t u : {uint64_t(0), h + 1, uint64_t(1000)}) {
        PrimeRange pr = primes_in(std::max<uint64_t>(3, Q), 2 * Q);
        for (int preset = 0; preset < 2; ++preset) {
          WeightSequence w = preset == 0 ? WeightSequence::unit(u, h)
                                         : WeightSequence::rademacher(u, h, 1);
          CHECK(moment(pr, w, 1, ClassFilter::All).value == moment_pair_expand(pr, w));
        }
      }
}

TEST_CASE("pair expansion edge cases") {
  PrimeRange pr = primes_in(10, 40);
  // h = 1: the diagonal counts primes not dividing u+1
  WeightSequence w1 = WeightSequence::unit(32, 1);  // n = 33 = 3 * 11
  long not_dividing = 0;
  for (uint64_t p : pr.primes)
    if (33 % p != 0) ++not_dividing;
  CHECK(moment_pair_expand(pr, w1) == not_dividing);

  CHECK(moment_pair_expand(pr, WeightSequence::zero(5, 4)) == 0);
  CHECK_THROWS_AS(moment_pair_expand(pr, WeightSequence::unimodular(0, 4, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(moment_pair_expand(pr, WeightSequence::unit(0, 5000)), std::length_error);
}

TEST_CASE("moment parallel equals serial") {
  PrimeRange pr = primes_in(3, 4000);
  WeightSequence w = WeightSequence::rademacher(100, 64, 7);
  MomentResult par = moment(pr, w, 2, ClassFilter::Odd);
  MomentResult ser = moment_serial(pr, w, 2, ClassFilter::Odd);
  CHECK(par.value == ser.value);
  CHECK(par.sums_int == ser.sums_int);

  WeightSequence cw = WeightSequence::unimodular(100, 64, 7);
  MomentResult cpar = moment(pr, cw, 1, ClassFilter::All);
  MomentResult cser = moment_serial(pr, cw, 1, ClassFilter::All);
  CHECK(cpar.value_c == cser.value_c);  // bit-identical pairwise reduction
  CHECK(cpar.sums_cpx == cser.sums_cpx);
}

TEST_CASE("dyadic decomposition examples") {
  DyadicDecomposition d = dyadic_decompose(WeightSequence::unit(0, 4));
  CHECK(d.ell == 1);
  REQUIRE(d.parts.size() == 2);
  CHECK(d.parts[0].covered == 2);  // {1, 3}
  CHECK(d.parts[1].covered == 1);  // {2} as odd part 1
  CHECK(d.remainder_count == 1);   // {4}

  DyadicDecomposition one = dyadic_decompose(WeightSequence::unit(0, 1));
  CHECK(one.ell == 0);
  CHECK(one.parts[0].covered + one.remainder_count == 1);

  // identity at q = 5: 0 = 0 + (2/5) * 1 + 1
  CHECK(char_sum_int(5, WeightSequence::unit(0, 4), ClassFilter::All) == 0);
  CHECK(char_sum_int(5, d.parts[0].beta, ClassFilter::Odd) == 0);
  CHECK(char_sum_int(5, d.parts[1].beta, ClassFilter::Odd) == 1);
  CHECK(jacobi(2, 5) == -1);
  CHECK(char_sum_int(5, d.remainder, ClassFilter::All) == 1);
  CHECK(dyadic_recompose_int(5, d) == 0);
}

TEST_CASE("dyadic decomposition identity on random instances") {
  uint64_t x = 2024;
  for (int trial = 0; trial < 1000; ++trial) {
    x = splitmix64(x);
    uint64_t u = x % 10000;
    x = splitmix64(x);
    uint64_t h = 1 + x % 128;
    x = splitmix64(x);
    uint64_t q = 2 * (x % 1000) + 3;
    x = splitmix64(x);
    WeightSequence w = WeightSequence::rademacher(u, h, x);
    DyadicDecomposition d = dyadic_decompose(w);

    CHECK(char_sum_int(q, w, ClassFilter::All) == dyadic_recompose_int(q, d));

    size_t covered = d.remainder_count;
    for (const auto& part : d.parts) covered += part.covered;
    CHECK(covered == h);
    CHECK(d.remainder_count <= h / (uint64_t(1) << d.ell) + 1);
    CHECK((uint64_t(1) << (2 * d.ell)) <= h);
    CHECK((uint64_t(1) << (2 * (d.ell + 1))) > h);
  }
}

TEST_CASE("seeded presets reproduce bit for bit") {
  WeightSequence a = WeightSequence::rademacher(10, 50, 123);
  WeightSequence b = WeightSequence::rademacher(10, 50, 123);
  CHECK(a.ivals == b.ivals);
  CHECK(a.ivals != WeightSequence::rademacher(10, 50, 124).ivals);

  WeightSequence c = WeightSequence::unimodular(10, 50, 123);
  WeightSequence e = WeightSequence::unimodular(10, 50, 123);
  CHECK(c.cvals == e.cvals);
  for (const auto& z : c.cvals) CHECK(std::abs(z) <= 1.0 + 1e-12);
}
