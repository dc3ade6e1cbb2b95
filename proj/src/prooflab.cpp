#include "charmoment/prooflab.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "json.hpp"

#include "charmoment/arith.hpp"
#include "charmoment/charsum.hpp"
#include "charmoment/format.hpp"
#include "charmoment/rng.hpp"
#include "charmoment/squareprod.hpp"

namespace charmoment {

uint64_t z_from_epsilon(uint64_t Q, const Rat& epsilon) {
  if (epsilon <= 0 || epsilon >= Rat(1, 3))
    throw std::domain_error("config: epsilon must lie in (0, 1/3)");
  if (!epsilon.get_num().fits_ulong_p() || !epsilon.get_den().fits_ulong_p())
    throw std::domain_error("config: epsilon numerator/denominator too large");
  unsigned long num = epsilon.get_num().get_ui();
  unsigned long den = epsilon.get_den().get_ui();
  Int qn;
  mpz_ui_pow_ui(qn.get_mpz_t(), Q, num);
  Int root;
  int exact = mpz_root(root.get_mpz_t(), qn.get_mpz_t(), den);
  uint64_t z = root.get_ui();
  if (!exact) ++z;  // ceil
  return z;
}

uint64_t resolve_z(const ExperimentConfig& cfg) {
  uint64_t z = cfg.z != 0 ? cfg.z : z_from_epsilon(cfg.Q, cfg.epsilon);
  if (z < 2) throw std::domain_error("config: z must be >= 2");
  if (z >= cfg.Q) throw std::domain_error("config: z must be < Q");
  return z;
}

ProofTrace proof_trace(const ExperimentConfig& cfg) {
  WeightSequence w = WeightSequence::make(cfg.preset, cfg.u, cfg.h, cfg.seed);
  return proof_trace(cfg, w);
}

ProofTrace proof_trace(const ExperimentConfig& cfg, const WeightSequence& w) {
  if (cfg.s != 1 && cfg.s != 2) throw std::domain_error("proof_trace: s must be 1 or 2");
  if (cfg.Q > 10000) throw std::length_error("proof_trace: Q exceeds the 10^4 tuple-resolved budget");
  if (cfg.h > 16) throw std::length_error("proof_trace: h exceeds the 16 tuple-resolved budget");
  if (cfg.h < 1) throw std::domain_error("proof_trace: h must be >= 1");
  if (w.mode != WeightMode::ExactInt)
    throw std::invalid_argument("proof_trace: complex weights unsupported");
  if (w.u != cfg.u || w.h != cfg.h)
    throw std::invalid_argument("proof_trace: weights do not match the configured interval");

  ProofTrace t;
  t.config = cfg;
  t.config.z = resolve_z(cfg);
  uint64_t z = t.config.z;

  PrimeRange pr = primes_in_serial(cfg.Q, 2 * cfg.Q);
  t.pi_count = pr.primes.size();

  if (w.all_zero()) return t;  // every field stays 0

  // class elements n = sharp (mod 4) with a nonzero coefficient
  uint64_t want = cfg.sharp > 0 ? 1 : 3;
  std::vector<std::pair<uint64_t, int>> cls;
  for (uint64_t j = 0; j < cfg.h; ++j) {
    uint64_t n = cfg.u + 1 + j;
    int a = w.ivals[static_cast<size_t>(j)];
    if ((n & 3) == want && a != 0) cls.emplace_back(n, a);
  }

  unsigned tlen = 2 * cfg.s;

  // M_sharp over primes in [Q, 2Q]
  for (uint64_t p : pr.primes) {
    if (p < 3) continue;
    long long S = 0;
    for (auto [n, a] : cls) S += static_cast<long long>(a) * jacobi_reduced(n % p, p);
    long long pw = S * S;
    if (cfg.s == 2) pw *= pw;
    t.M_sharp += static_cast<long>(pw);
  }

  SieveSystem sys = selberg_lambdas(z);
  std::vector<uint64_t> zprimes = primes_in_serial(2, z).primes;
  size_t k = zprimes.size();
  size_t nmask = size_t(1) << k;

  // The sieve weight of q depends only on which primes <= z divide q,
  // so aggregate integer symbol sums per divisibility mask and spend
  // rational arithmetic once per mask.
  std::vector<Rat> wmask(nmask, Rat(0));
  for (const auto& [e, v] : sys.lambda_plus) {
    uint32_t em = 0;
    for (size_t i = 0; i < k; ++i)
      if (e % zprimes[i] == 0) em |= uint32_t(1) << i;
    for (size_t mask = 0; mask < nmask; ++mask)
      if ((mask & em) == em) wmask[mask] += v;
  }

  uint64_t qlo = cfg.Q, qhi = 2 * cfg.Q;
  std::vector<uint8_t> qmask(static_cast<size_t>(qhi - qlo + 1));
  for (uint64_t q = qlo; q <= qhi; ++q) {
    uint8_t m = 0;
    for (size_t i = 0; i < k; ++i)
      if (q % zprimes[i] == 0) m |= uint8_t(1) << i;
    qmask[static_cast<size_t>(q - qlo)] = m;
  }

  // T = sum_q w_q * S_q^{2s}, with the symbol extended to even q
  {
    std::vector<long long> acc(nmask, 0);
    for (uint64_t q = qlo; q <= qhi; ++q) {
      long long S = 0;
      for (auto [n, a] : cls) S += static_cast<long long>(a) * kronecker_odd_top(n, q);
      long long pw = S * S;
      if (cfg.s == 2) pw *= pw;
      acc[qmask[static_cast<size_t>(q - qlo)]] += pw;
    }
    for (size_t mask = 0; mask < nmask; ++mask)
      if (acc[mask] != 0) t.T_majorant += wmask[mask] * Rat(Int(static_cast<long>(acc[mask])));
  }

  // aggregate tuple coefficients by product N
  std::map<uint64_t, long long> agg;
  if (!cls.empty()) {
    std::vector<size_t> idx(tlen, 0);
    for (;;) {
      unsigned __int128 prod = 1;
      long long coeff = 1;
      for (unsigned d = 0; d < tlen; ++d) {
        prod *= cls[idx[d]].first;
        coeff *= cls[idx[d]].second;
      }
      if (prod >= (static_cast<unsigned __int128>(1) << 62))
        throw std::length_error("proof_trace: tuple product exceeds the 2^62 capacity");
      uint64_t N = static_cast<uint64_t>(prod);
      if ((N & 3) != 1) {
        t.class_congruence_ok = false;
        throw std::logic_error("proof_trace: class tuple product not 1 mod 4");
      }
      agg[N] += coeff;
      unsigned d = 0;
      while (d < tlen && ++idx[d] == cls.size()) idx[d++] = 0;
      if (d == tlen) break;
    }
  }

  // per-product symbol sums: direct Kronecker route, and the
  // reciprocity-flipped route for the non-square part
  for (const auto& [N, coeff] : agg) {
    if (coeff == 0) continue;
    std::vector<long long> acc(nmask, 0);
    for (uint64_t q = qlo; q <= qhi; ++q) {
      int kv = kronecker_odd_top(N, q);
      if (kv != 0) acc[qmask[static_cast<size_t>(q - qlo)]] += kv;
    }
    Rat inner(0);
    for (size_t mask = 0; mask < nmask; ++mask)
      if (acc[mask] != 0) inner += wmask[mask] * Rat(Int(static_cast<long>(acc[mask])));
    Rat contrib = Rat(Int(static_cast<long>(coeff))) * inner;

    if (is_square(N)) {
      t.U_square += contrib;
    } else {
      t.U_nonsquare += contrib;
      Rat flipped(0);
      for (const auto& [e, v] : sys.lambda_plus) {
        long long js = 0;
        uint64_t first = ((qlo + e - 1) / e) * e;
        for (uint64_t q = first; q <= qhi; q += e) js += jacobi_reduced(q % N, N);
        if (js != 0) flipped += v * Rat(Int(static_cast<long>(js)));
      }
      t.U_nonsquare_flipped += Rat(Int(static_cast<long>(coeff))) * flipped;
    }
  }

  t.r_2s = r_count_kernel(cfg.u, cfg.h, tlen);
  t.R_bound_term = Rat(Int(t.r_2s)) * sieve_upper_count(sys, cfg.Q);
  return t;
}

std::string trace_to_json(const ProofTrace& t) {
  nlohmann::json j;
  j["config"] = {{"Q", t.config.Q},       {"u", t.config.u},
                 {"h", t.config.h},       {"s", t.config.s},
                 {"z", t.config.z},       {"epsilon", rat_str(t.config.epsilon)},
                 {"weights", to_string(t.config.preset)},
                 {"seed", t.config.seed}, {"sharp", t.config.sharp > 0 ? "plus" : "minus"}};
  j["M_sharp"] = t.M_sharp.get_str();
  j["T_majorant"] = rat_str(t.T_majorant);
  j["U_square"] = rat_str(t.U_square);
  j["U_nonsquare"] = rat_str(t.U_nonsquare);
  j["U_nonsquare_flipped"] = rat_str(t.U_nonsquare_flipped);
  j["R_bound_term"] = rat_str(t.R_bound_term);
  j["r_2s"] = t.r_2s;
  j["pi"] = t.pi_count;
  j["checks"] = {{"majorant", t.majorant_ok()},
                 {"split", t.split_ok()},
                 {"square_bound", t.square_bound_ok()},
                 {"flip", t.flip_ok()},
                 {"class_congruence", t.class_congruence_ok}};
  return j.dump(2) + "\n";
}

namespace {

struct PeriodTable {
  std::vector<long long> prefix;  // prefix[r] = sum_{v=0..r} (v/m)
  long long period_sum = 0;

  explicit PeriodTable(uint64_t m) {
    prefix.resize(static_cast<size_t>(m));
    long long acc = 0;
    for (uint64_t v = 0; v < m; ++v) {
      acc += jacobi_reduced(v, m);
      prefix[static_cast<size_t>(v)] = acc;
    }
    period_sum = acc;
  }

  // sum_{v=0..x} (v/m) for any x >= 0, folding full periods
  long long upto(uint64_t x, uint64_t m) const {
    return static_cast<long long>(x / m) * period_sum + prefix[static_cast<size_t>(x % m)];
  }

  // inclusive window [A, A+V]
  long long window(uint64_t A, uint64_t V, uint64_t m) const {
    long long hi = upto(A + V, m);
    long long lo = A == 0 ? 0 : upto(A - 1, m);
    return hi - lo;
  }
};

WindowScanRow scan_one_burgess(uint64_t m, const std::vector<uint64_t>& V_grid, uint64_t seed) {
  WindowScanRow row;
  row.m = m;
  PeriodTable tab(m);
  row.full_period_sum = tab.period_sum;
  if (is_square(m)) {
    row.square_excluded = true;  // principal character; bound inapplicable
    return row;
  }
  std::vector<uint64_t> vs = V_grid;
  if (vs.empty()) {
    double dm = static_cast<double>(m);
    vs = {static_cast<uint64_t>(std::ceil(std::pow(dm, 0.25))),
          static_cast<uint64_t>(std::ceil(std::pow(dm, 0.5))),
          static_cast<uint64_t>(std::ceil(std::pow(dm, 0.75)))};
  }
  uint64_t stride = isqrt_u64(m);
  if (stride * stride < m) ++stride;
  for (uint64_t V : vs) {
    if (V < 1) continue;
    if (V > m) V = m;
    auto consider = [&](uint64_t A) {
      double stat = std::abs(static_cast<double>(tab.window(A, V, m))) /
                    std::sqrt(static_cast<double>(V));
      if (stat > row.best_stat) {
        row.best_stat = stat;
        row.best_A = A;
        row.best_V = V;
      }
    };
    for (uint64_t A = 0; A < m; A += stride) consider(A);
    for (int r = 0; r < 64; ++r) consider(mix_seed(seed, m, V, static_cast<uint64_t>(r)) % m);
  }
  row.exponent = row.best_stat > 0 ? std::log(row.best_stat) / std::log(static_cast<double>(m)) : 0.0;
  return row;
}

WindowScanRow scan_one_grh(uint64_t m, const std::vector<uint64_t>& T_grid) {
  WindowScanRow row;
  row.m = m;
  PeriodTable tab(m);
  row.full_period_sum = tab.period_sum;
  if (is_square(m)) {
    row.square_excluded = true;
    return row;
  }
  for (uint64_t T : T_grid) {
    if (T < 1) continue;
    double stat = std::abs(static_cast<double>(tab.upto(T, m))) / std::sqrt(static_cast<double>(T));
    if (stat > row.best_stat) {
      row.best_stat = stat;
      row.best_V = T;
    }
  }
  row.exponent = row.best_stat > 0 ? std::log(row.best_stat) / std::log(static_cast<double>(m)) : 0.0;
  return row;
}

} // namespace

std::vector<WindowScanRow> burgess_scan(uint64_t m_lo, uint64_t m_hi,
                                        const std::vector<uint64_t>& V_grid, uint64_t seed) {
  if (m_lo < 3) m_lo = 3;
  if (m_hi < m_lo) throw std::invalid_argument("burgess_scan: empty modulus range");
  std::vector<uint64_t> ms;
  for (uint64_t m = m_lo | 1; m <= m_hi; m += 2) ms.push_back(m);
  std::vector<WindowScanRow> rows(ms.size());
#pragma omp parallel for schedule(dynamic)
  for (int64_t i = 0; i < static_cast<int64_t>(ms.size()); ++i)
    rows[static_cast<size_t>(i)] = scan_one_burgess(ms[static_cast<size_t>(i)], V_grid, seed);
  return rows;
}

long long window_char_sum(uint64_t m, uint64_t A, uint64_t V) {
  if (m < 3 || (m & 1) == 0)
    throw std::invalid_argument("window_char_sum: modulus must be odd and >= 3");
  long long acc = 0;
  for (uint64_t v = A; v <= A + V; ++v) acc += jacobi_reduced(v % m, m);
  return acc;
}

std::vector<WindowScanRow> grh_scan(const std::vector<uint64_t>& ms,
                                    const std::vector<uint64_t>& T_grid) {
  for (uint64_t m : ms)
    if (m < 3 || (m & 1) == 0)
      throw std::invalid_argument("grh_scan: moduli must be odd and >= 3");
  std::vector<WindowScanRow> rows(ms.size());
#pragma omp parallel for schedule(dynamic)
  for (int64_t i = 0; i < static_cast<int64_t>(ms.size()); ++i)
    rows[static_cast<size_t>(i)] = scan_one_grh(ms[static_cast<size_t>(i)], T_grid);
  return rows;
}

std::string scan_to_csv(const std::vector<WindowScanRow>& rows) {
  std::string out = "m,square_excluded,best_stat,best_A,best_V,exponent,period_sum\n";
  for (const auto& r : rows) {
    out += std::to_string(r.m) + ',' + (r.square_excluded ? '1' : '0') + ',' + fmt_g(r.best_stat) +
           ',' + std::to_string(r.best_A) + ',' + std::to_string(r.best_V) + ',' +
           fmt_g(r.exponent) + ',' + std::to_string(r.full_period_sum) + '\n';
  }
  return out;
}

std::string scan_plot_csv(const std::vector<WindowScanRow>& rows) {
  std::string out = "m,best_stat\n";
  for (const auto& r : rows) {
    if (r.square_excluded) continue;
    out += std::to_string(r.m) + ',' + fmt_g(r.best_stat) + '\n';
  }
  return out;
}

std::vector<ReportRow> theorem_report(const std::vector<ExperimentConfig>& grid) {
  std::vector<ReportRow> rows;
  rows.reserve(grid.size());
  for (const ExperimentConfig& cfg : grid) {
    ReportRow row;
    row.cfg = cfg;
    row.framing_violated = !cfg.framing_ok();
    WeightSequence w = WeightSequence::make(cfg.preset, cfg.u, cfg.h, cfg.seed);
    PrimeRange pr = primes_in(std::max<uint64_t>(3, cfg.Q), 2 * cfg.Q);
    MomentResult mr = moment(pr, w, cfg.s, ClassFilter::All);
    row.M = mr.value;
    row.pi_count = mr.primes.size();

    double h = static_cast<double>(cfg.h);
    double Q = static_cast<double>(cfg.Q);
    double hs = std::pow(h, static_cast<double>(cfg.s));
    double logh = std::log(h);
    row.bound_terms[0] = hs * static_cast<double>(row.pi_count) * (cfg.s == 1 ? logh : 1.0);
    double qexp = cfg.s == 1 ? 7.0 / 8.0 : 0.5;
    row.bound_terms[1] = hs * hs * std::pow(Q, qexp);
    double M = row.M.get_d();
    row.ratios[0] = row.bound_terms[0] > 0 ? M / row.bound_terms[0] : 0.0;
    row.ratios[1] = row.bound_terms[1] > 0 ? M / row.bound_terms[1] : 0.0;
    if (cfg.u == 0) {
      row.baseline = (Q + hs) * hs;
      row.has_baseline = true;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string report_to_json(const std::vector<ReportRow>& rows) {
  nlohmann::json j;
  nlohmann::json cfg;
  if (!rows.empty()) {
    cfg["weights"] = to_string(rows.front().cfg.preset);
    cfg["seed"] = rows.front().cfg.seed;
    cfg["s"] = rows.front().cfg.s;
  }
  j["config"] = cfg;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    row["Q"] = r.cfg.Q;
    row["u"] = r.cfg.u;
    row["h"] = r.cfg.h;
    row["s"] = r.cfg.s;
    row["M"] = r.M.get_str();
    row["pi"] = r.pi_count;
    row["bound_terms"] = {r.bound_terms[0], r.bound_terms[1]};
    row["ratios"] = {r.ratios[0], r.ratios[1]};
    if (r.has_baseline) row["baseline"] = r.baseline;
    if (r.framing_violated) row["framing_violated"] = true;
    arr.push_back(std::move(row));
  }
  j["rows"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string report_plot_csv(const std::vector<ReportRow>& rows) {
  // one series per Q: h against the first-bound ratio
  std::string out;
  uint64_t last_q = 0;
  bool first = true;
  for (const auto& r : rows) {
    if (first || r.cfg.Q != last_q) {
      out += "# Q=" + std::to_string(r.cfg.Q) + " s=" + std::to_string(r.cfg.s) + "\n";
      out += "h,ratio_leading\n";
      last_q = r.cfg.Q;
      first = false;
    }
    out += std::to_string(r.cfg.h) + ',' + fmt_g(r.ratios[0]) + '\n';
  }
  return out;
}

} // namespace charmoment
