#ifndef CHARMOMENT_PROOFLAB_HPP
#define CHARMOMENT_PROOFLAB_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "charmoment/rational.hpp"
#include "charmoment/selberg.hpp"
#include "charmoment/weights.hpp"

namespace charmoment {

// One experiment cell: moments of weighted Legendre sums over primes in
// [Q, 2Q], interval (u, u+h], sieving level z = ceil(Q^epsilon).
struct ExperimentConfig {
  uint64_t Q = 0;
  uint64_t u = 0;
  uint64_t h = 0;
  unsigned s = 1;
  Rat epsilon = Rat(1, 4);  // in (0, 1/3)
  uint64_t z = 0;           // resolved level; derived from epsilon when 0
  WeightPreset preset = WeightPreset::Unit;
  uint64_t seed = 0;
  int sharp = +1;  // +1 or -1: the residue class of n mod 4

  bool framing_ok() const { return 2 <= h && h < u && u <= Q; }
};

// Smallest integer z with z >= Q^epsilon, evaluated exactly from the
// rational exponent (z^den >= Q^num).
uint64_t z_from_epsilon(uint64_t Q, const Rat& epsilon);

// Resolve cfg.z (from epsilon if unset) and validate z >= 2, z < Q.
uint64_t resolve_z(const ExperimentConfig& cfg);

// Every intermediate quantity of the sieve majorization chain on one
// configuration, exact:
//
//   M_sharp  <=  T_majorant  =  U_square + U_nonsquare,
//   U_square <=  R_{2s}(h,u) * sieve_upper_count(z-system, Q),
//
// with U_nonsquare recomputed through the reciprocity flip
// (N/q) -> (q/N), legal because every class product N is 1 mod 4.
struct ProofTrace {
  ExperimentConfig config;
  Int M_sharp;
  Rat T_majorant;
  Rat U_square;
  Rat U_nonsquare;
  Rat U_nonsquare_flipped;
  Rat R_bound_term;
  uint64_t r_2s = 0;        // R_{2s}(h, u)
  uint64_t pi_count = 0;    // primes in [Q, 2Q]
  bool class_congruence_ok = true;

  bool majorant_ok() const { return Rat(M_sharp) <= T_majorant; }
  bool split_ok() const { return T_majorant == U_square + U_nonsquare; }
  bool square_bound_ok() const { return U_square <= R_bound_term; }
  bool flip_ok() const { return U_nonsquare == U_nonsquare_flipped; }
  bool all_ok() const {
    return majorant_ok() && split_ok() && square_bound_ok() && flip_ok() && class_congruence_ok;
  }
};

// Tuple-resolved trace; exact-int weights, s in {1,2}, Q <= 10^4, h <= 16.
// Single-threaded per instance; instances are independent.
ProofTrace proof_trace(const ExperimentConfig& cfg);
ProofTrace proof_trace(const ExperimentConfig& cfg, const WeightSequence& weights);

std::string trace_to_json(const ProofTrace& t);

// Character-sum window scans. Each row carries the complete-period sum,
// which vanishes for every non-square odd m (the scan self-check); square
// m are flagged and excluded from the statistic.
struct WindowScanRow {
  uint64_t m = 0;
  bool square_excluded = false;
  double best_stat = 0.0;  // max |sum over window| / sqrt(V)
  uint64_t best_A = 0;
  uint64_t best_V = 0;
  double exponent = 0.0;  // log(best_stat) / log(m)
  long long full_period_sum = 0;
};

// Windows [A, A+V] (inclusive) for V in the grid (capped at m); A runs over
// a stride-ceil(sqrt(m)) grid plus 64 seeded offsets. Empty grid means
// V in {ceil(m^1/4), ceil(m^1/2), ceil(m^3/4)} per modulus.
std::vector<WindowScanRow> burgess_scan(uint64_t m_lo, uint64_t m_hi,
                                        const std::vector<uint64_t>& V_grid, uint64_t seed);

// Initial intervals [1, T] only; best_V holds the argmax T.
std::vector<WindowScanRow> grh_scan(const std::vector<uint64_t>& ms,
                                    const std::vector<uint64_t>& T_grid);

// Inclusive window sum over A <= v <= A+V of (v/m); the scans' statistic
// numerator, exposed for direct checks.
long long window_char_sum(uint64_t m, uint64_t A, uint64_t V);

std::string scan_to_csv(const std::vector<WindowScanRow>& rows);
std::string scan_plot_csv(const std::vector<WindowScanRow>& rows);  // m,best_stat

// Moment table for a grid of configurations: exact M_{2s}, the prime count
// pi over [Q, 2Q], the two bound terms h^s * pi * (log h)^[s=1] and
// h^{2s} * Q^{7/8 or 1/2}, their ratios to M, plus the initial-interval
// baseline (Q + h^s) * h^s on u = 0 rows.
struct ReportRow {
  ExperimentConfig cfg;
  Int M;
  uint64_t pi_count = 0;
  double bound_terms[2] = {0.0, 0.0};
  double ratios[2] = {0.0, 0.0};
  double baseline = 0.0;
  bool has_baseline = false;
  bool framing_violated = false;
};

std::vector<ReportRow> theorem_report(const std::vector<ExperimentConfig>& grid);

std::string report_to_json(const std::vector<ReportRow>& rows);
std::string report_plot_csv(const std::vector<ReportRow>& rows);

} // namespace charmoment

#endif
