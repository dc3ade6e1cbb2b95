#ifndef CHARMOMENT_SQUAREPROD_HPP
#define CHARMOMENT_SQUAREPROD_HPP

#include <cstdint>
#include <vector>

namespace charmoment {

// R_t(h, u): ordered t-tuples from (u, u+h] whose product is a perfect
// square. Three routes: exhaustive enumeration, the squarefree-kernel
// pairing k a^2 / k b^2 for t = 2, and a kernel-class meet-in-the-middle
// for t in {2, 4}.

// Enumeration with wide-integer square tests; budget h^t <= 10^8.
// Stays independent of kernel_table so it can serve as the oracle.
uint64_t r_count_brute(uint64_t u, uint64_t h, unsigned t);

// R_2 as sum over kernels k of C_k^2, C_k = #{n in (u,u+h] : kappa(n) = k}.
uint64_t r2_structured(uint64_t u, uint64_t h);

// t = 2: kernel histogram; t = 4: classes of pair products keyed by
// kappa(kappa(n1) * kappa(n2)), reduced by gcd (square parts cancel).
// h <= 2^13 for t = 4 (h^2 class-map cost).
uint64_t r_count_kernel(uint64_t u, uint64_t h, unsigned t);

struct ConjectureRow {
  uint64_t u = 0;
  uint64_t h = 0;
  unsigned t = 2;
  uint64_t count = 0;
  double exponent = 0.0;      // log R_t / log h
  double ratio = 0.0;         // R_t / h^(t/2)
  double hlogh_ratio = 0.0; // R_t / (h ln(h+2)), ratio to the h log h scale
};

std::vector<ConjectureRow> conjecture_scan(const std::vector<uint64_t>& us,
                                           const std::vector<uint64_t>& hs, unsigned t);

} // namespace charmoment

#endif
