#ifndef CHARMOMENT_SELBERG_HPP
#define CHARMOMENT_SELBERG_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "charmoment/rational.hpp"

namespace charmoment {

// Optimal one-dimensional sieve weights at level z, kept as exact rationals.
//
// Lambda_d = mu(d) * (d/phi(d)) * G_d(z/d) / G(z) on squarefree d <= z,
// lambda_plus_n = sum over lcm[r,s] = n of Lambda_r * Lambda_s.
//
// The correctness gate is the quadratic-form witness
//   sum_{d1,d2 <= z} Lambda_d1 Lambda_d2 / lcm[d1,d2] = 1 / G(z).
struct SieveSystem {
  uint64_t z = 0;
  Rat G;
  std::vector<std::pair<uint64_t, Rat>> Lambda;       // ascending squarefree d <= z
  std::vector<std::pair<uint64_t, Rat>> lambda_plus;  // ascending n < z^2, nonzero entries

  // sum over e | q of lambda_plus_e; equals (sum over d | q of Lambda_d)^2.
  Rat divisor_weight(uint64_t q) const;
  // (sum over d | q, d <= z of Lambda_d)^2, evaluated from the Lambda side.
  Rat lambda_divisor_sum_squared(uint64_t q) const;
  // sum over stored n of |lambda_plus_n|.
  Rat lambda_plus_l1() const;
};

// G(z) = sum over squarefree q <= z of 1/phi(q); the sieve normalizer.
Rat big_g(uint64_t z);

SieveSystem selberg_lambdas(uint64_t z);

// T(Z) = sum over q in the closed interval [Z, 2Z] of divisor_weight(q),
// computed as sum_e lambda_plus_e * #{multiples of e in [Z, 2Z]}; exact.
Rat sieve_upper_count(const SieveSystem& sys, uint64_t Z);

struct SieveCheck {
  std::string name;
  bool pass;
  std::string detail;
};

struct SieveCheckReport {
  std::vector<SieveCheck> checks;
  double rho1 = 0.0;  // (sum |lambda_plus|) / (z^2 / ln^2 z)
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Exhaustive identity checks up to qmax; failures are report entries.
SieveCheckReport verify_sieve(const SieveSystem& sys, uint64_t qmax);

std::string sieve_to_json(const SieveSystem& sys);
SieveSystem sieve_from_json(const std::string& text);

} // namespace charmoment

#endif
