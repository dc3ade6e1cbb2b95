#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "charmoment/arith.hpp"
#include "charmoment/rng.hpp"
#include "charmoment/selberg.hpp"

using namespace charmoment;

namespace {

Rat quadratic_form(const std::vector<std::pair<uint64_t, Rat>>& lambda) {
  Rat q(0);
  for (const auto& [d1, v1] : lambda)
    for (const auto& [d2, v2] : lambda) {
      uint64_t l = d1 / std::gcd(d1, d2) * d2;
      q += v1 * v2 / Rat(static_cast<unsigned long>(l));
    }
  return q;
}

} // namespace

TEST_CASE("big_g examples") {
  CHECK(big_g(1) == Rat(1));
  CHECK(big_g(3) == Rat(5, 2));
  CHECK(big_g(5) == Rat(11, 4));
  CHECK_THROWS_AS(big_g(0), std::domain_error);

  // nondecreasing in z, and >= 1
  Rat prev(0);
  for (uint64_t z = 1; z <= 60; ++z) {
    Rat g = big_g(z);
    CHECK(g >= 1);
    CHECK(g >= prev);
    prev = g;
  }
}

TEST_CASE("selberg_lambdas z=3 closed values") {
  SieveSystem sys = selberg_lambdas(3);
  REQUIRE(sys.Lambda.size() == 3);
  CHECK(sys.Lambda[0] == std::pair<uint64_t, Rat>{1, Rat(1)});
  CHECK(sys.Lambda[1] == std::pair<uint64_t, Rat>{2, Rat(-4, 5)});
  CHECK(sys.Lambda[2] == std::pair<uint64_t, Rat>{3, Rat(-3, 5)});

  REQUIRE(sys.lambda_plus.size() == 4);
  CHECK(sys.lambda_plus[0] == std::pair<uint64_t, Rat>{1, Rat(1)});
  CHECK(sys.lambda_plus[1] == std::pair<uint64_t, Rat>{2, Rat(-24, 25)});
  CHECK(sys.lambda_plus[2] == std::pair<uint64_t, Rat>{3, Rat(-21, 25)});
  CHECK(sys.lambda_plus[3] == std::pair<uint64_t, Rat>{6, Rat(24, 25)});

  CHECK(sys.divisor_weight(30) == Rat(4, 25));
  CHECK(sys.lambda_divisor_sum_squared(30) == Rat(4, 25));
  CHECK(sys.lambda_plus_l1() == Rat(94, 25));
  CHECK(quadratic_form(sys.Lambda) == Rat(2, 5));
  CHECK(Rat(2, 5) == 1 / sys.G);
  CHECK_THROWS_AS(selberg_lambdas(1), std::domain_error);
}

TEST_CASE("z=2 support is {1, 2}") {
  SieveSystem sys = selberg_lambdas(2);
  for (const auto& [n, v] : sys.lambda_plus) CHECK(n <= 2);
}

TEST_CASE("optimality witness Q(Lambda) = 1/G(z) for every z <= 200") {
  for (uint64_t z = 2; z <= 200; ++z) {
    SieveSystem sys = selberg_lambdas(z);
    CHECK(quadratic_form(sys.Lambda) == 1 / sys.G);
  }
}

TEST_CASE("perturbed weights never beat the optimum") {
  for (uint64_t z : {3ULL, 10ULL, 30ULL}) {
    SieveSystem sys = selberg_lambdas(z);
    Rat optimum = 1 / sys.G;
    uint64_t x = 42 + z;
    for (int trial = 0; trial < 20; ++trial) {
      auto perturbed = sys.Lambda;
      for (size_t i = 1; i < perturbed.size(); ++i) {  // keep Lambda_1 = 1
        x = splitmix64(x);
        long num = static_cast<long>(x % 17) - 8;
        Rat delta(num, 64);
        delta.canonicalize();
        perturbed[i].second += delta;
      }
      CHECK(quadratic_form(perturbed) >= optimum);
    }
  }
}

TEST_CASE("square identity and coprime normalization up to q = 2000") {
  for (uint64_t z : {3ULL, 5ULL, 10ULL, 30ULL}) {
    SieveSystem sys = selberg_lambdas(z);
    std::vector<uint64_t> zp = primes_in_serial(2, z).primes;
    for (uint64_t q = 1; q <= 2000; ++q) {
      Rat w = sys.divisor_weight(q);
      CHECK(w == sys.lambda_divisor_sum_squared(q));
      CHECK(w >= 0);
      bool coprime = true;
      for (uint64_t p : zp)
        if (q % p == 0) coprime = false;
      if (coprime) CHECK(w == 1);
    }
    for (const auto& [n, v] : sys.lambda_plus) CHECK(n < z * z);
  }
}

TEST_CASE("sieve_upper_count examples and domination") {
  SieveSystem z3 = selberg_lambdas(3);
  CHECK(sieve_upper_count(z3, 1) == Rat(26, 25));
  CHECK(sieve_upper_count(z3, 0) == 0);

  SieveSystem z20 = selberg_lambdas(20);
  Rat t = sieve_upper_count(z20, 10000);
  uint64_t primes_in_dyadic = primes_in_serial(10000, 20000).primes.size();
  CHECK(primes_in_dyadic == 1033);
  CHECK(t >= Rat(static_cast<unsigned long>(primes_in_dyadic)));

  // domination against a direct coprime count
  std::vector<uint64_t> zp = primes_in_serial(2, 20).primes;
  for (uint64_t Z : {50ULL, 500ULL, 5000ULL, 100000ULL}) {
    uint64_t coprime_count = 0;
    for (uint64_t q = Z; q <= 2 * Z; ++q) {
      bool coprime = true;
      for (uint64_t p : zp)
        if (q % p == 0) {
          coprime = false;
          break;
        }
      if (coprime) ++coprime_count;
    }
    CHECK(sieve_upper_count(z20, Z) >= Rat(static_cast<unsigned long>(coprime_count)));
  }
}

TEST_CASE("verify_sieve reports") {
  SieveSystem sys = selberg_lambdas(3);
  SieveCheckReport rep = verify_sieve(sys, 100);
  CHECK(rep.all_pass());
  CHECK(rep.rho1 > 0);

  // a corrupted system fails the identity checks
  SieveSystem bad = sys;
  bad.lambda_plus[1].second += Rat(1, 7);
  SieveCheckReport bad_rep = verify_sieve(bad, 50);
  CHECK(!bad_rep.all_pass());
}

TEST_CASE("sieve JSON round-trip") {
  SieveSystem sys = selberg_lambdas(10);
  SieveSystem back = sieve_from_json(sieve_to_json(sys));
  CHECK(back.z == sys.z);
  CHECK(back.G == sys.G);
  CHECK(back.Lambda == sys.Lambda);
  CHECK(back.lambda_plus == sys.lambda_plus);
}
