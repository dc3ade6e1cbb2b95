#ifndef CHARMOMENT_CHARSUM_HPP
#define CHARMOMENT_CHARSUM_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "charmoment/arith.hpp"
#include "charmoment/rational.hpp"
#include "charmoment/weights.hpp"

namespace charmoment {

// S_q(alpha, u, h) = sum over n in (u, u+h] meeting the filter of
// alpha_n * (n/q), q odd >= 3. Exact integer in exact-int mode.
long long char_sum_int(uint64_t q, const WeightSequence& w, ClassFilter filter);
std::complex<double> char_sum_complex(uint64_t q, const WeightSequence& w, ClassFilter filter);

// M_{2s} = sum over p in the range of |S_p|^{2s}, with the per-prime
// breakdown retained. p = 2 is skipped (Legendre symbol undefined there).
// The parallel version computes per-prime values independently and reduces
// in ascending-p order, so results match the serial one bit for bit.
struct MomentResult {
  bool exact = true;
  unsigned s = 1;
  Int value;                 // exact total, exact-int mode
  double value_c = 0.0;      // complex-mode total (fixed-order pairwise sum)
  bool empty_range_warning = false;
  std::vector<uint64_t> primes;
  std::vector<long long> sums_int;                  // per-prime S_p, exact mode
  std::vector<std::complex<double>> sums_cpx;       // per-prime S_p, complex mode
};

MomentResult moment(const PrimeRange& pr, const WeightSequence& w, unsigned s, ClassFilter filter);
MomentResult moment_serial(const PrimeRange& pr, const WeightSequence& w, unsigned s,
                           ClassFilter filter);

// Independent oracle for M_2: expands |S_p|^2 = sum_{m,n} alpha_m alpha_n (mn/p)
// and sums over p in the inner position. Exact-int mode, h <= 2^12.
Int moment_pair_expand(const PrimeRange& pr, const WeightSequence& w);

// Split of (u, u+h] by 2-adic order. Level i covers the exact index set
// {n odd : 2^i n in (u, u+h]} with beta_{i,n} = alpha_{2^i n}; levels run
// up to ell defined by 2^ell <= h^(1/2) < 2^(ell+1), and the remainder
// keeps alpha on the original interval at indices with order > ell.
struct DyadicPart {
  unsigned i = 0;
  WeightSequence beta;   // on (u_i, u_i + h_i], zero at even n
  size_t covered = 0;    // odd indices holding a coefficient slot
};

struct DyadicDecomposition {
  unsigned ell = 0;
  std::vector<DyadicPart> parts;  // i = 0, ..., ell
  WeightSequence remainder;       // on (u, u+h], orders > ell
  size_t remainder_count = 0;     // interval elements with order > ell
};

DyadicDecomposition dyadic_decompose(const WeightSequence& w);

// Exact identity the decomposition satisfies for every odd q >= 3:
//   char_sum(q, w, all) =
//     sum_i jacobi(2,q)^i * char_sum(q, parts[i].beta, odd)
//     + char_sum(q, remainder, all).
long long dyadic_recompose_int(uint64_t q, const DyadicDecomposition& d);

} // namespace charmoment

#endif
