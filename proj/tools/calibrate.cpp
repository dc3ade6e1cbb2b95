// Generates tests/fixtures/calibration.json: the frozen constants the
// acceptance suite asserts against, together with the observed values
// they were derived from. Rerun after any change to the kernels and
// check in the result.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "json.hpp"

#include "charmoment/charsum.hpp"
#include "charmoment/prooflab.hpp"
#include "charmoment/squareprod.hpp"

using namespace charmoment;

namespace {

double round_up_3(double v) { return std::ceil(v * 1000.0) / 1000.0; }

} // namespace

int main(int argc, char** argv) {
  std::string out_path = argc > 1 ? argv[1] : "tests/fixtures/calibration.json";
  nlohmann::json j;

  // R_2 scaling constant: max of R_2(h,u) / (h ln(h+2)) on the scan grid,
  // with the brute count as the oracle on every cell.
  {
    double max_ratio = 0;
    uint64_t arg_h = 0, arg_u = 0;
    for (uint64_t u : {1000ULL, 1000000ULL, 1000000000ULL}) {
      for (uint64_t h = 2; h <= 512; h *= 2) {
        uint64_t brute = r_count_brute(u, h, 2);
        uint64_t structured = r2_structured(u, h);
        if (brute != structured) {
          std::cerr << "calibrate: brute/structured disagree at u=" << u << " h=" << h << "\n";
          return 1;
        }
        double ratio = static_cast<double>(brute) /
                       (static_cast<double>(h) * std::log(static_cast<double>(h + 2)));
        if (ratio > max_ratio) {
          max_ratio = ratio;
          arg_h = h;
          arg_u = u;
        }
      }
    }
    j["r2_scaling"] = {{"C", round_up_3(max_ratio)},
                       {"max_observed", max_ratio},
                       {"argmax_h", arg_h},
                       {"argmax_u", arg_u},
                       {"grid", "h in powers of 2 up to 512, u in {1e3, 1e6, 1e9}"}};
    std::printf("r2 scaling: max ratio %.6f at h=%llu u=%llu -> C = %.3f\n", max_ratio,
                static_cast<unsigned long long>(arg_h), static_cast<unsigned long long>(arg_u),
                round_up_3(max_ratio));
  }

  // Second-moment ratio rho = M_2 / (h pi log h) on the desk-scale grid.
  {
    double max_rho = 0;
    nlohmann::json cells = nlohmann::json::array();
    for (uint64_t Q : {100000ULL, 1000000ULL}) {
      PrimeRange pr = primes_in(Q, 2 * Q);
      for (uint64_t h : {16ULL, 64ULL, 256ULL}) {
        WeightSequence w = WeightSequence::unit(Q / 2, h);
        MomentResult mr = moment(pr, w, 1, ClassFilter::All);
        double rho = mr.value.get_d() / (static_cast<double>(h) *
                                         static_cast<double>(mr.primes.size()) *
                                         std::log(static_cast<double>(h)));
        cells.push_back({{"Q", Q}, {"h", h}, {"M", mr.value.get_str()},
                         {"pi", mr.primes.size()}, {"rho", rho}});
        if (rho > max_rho) max_rho = rho;
        std::printf("rho: Q=%llu h=%llu M=%s rho=%.6f\n", static_cast<unsigned long long>(Q),
                    static_cast<unsigned long long>(h), mr.value.get_str().c_str(), rho);
      }
    }
    j["rho2"] = {{"max", round_up_3(max_rho)},
                 {"max_observed", max_rho},
                 {"cells", cells},
                 {"grid", "Q in {1e5, 1e6}, u = Q/2, h in {16, 64, 256}, unit weights"}};
    std::printf("rho2 max observed %.6f -> frozen %.3f\n", max_rho, round_up_3(max_rho));
  }

  // Frozen proof-chain trace on the reference configuration.
  {
    ExperimentConfig cfg;
    cfg.Q = 100;
    cfg.u = 20;
    cfg.h = 4;
    cfg.s = 1;
    cfg.z = 3;
    cfg.preset = WeightPreset::Unit;
    cfg.sharp = +1;
    ProofTrace t = proof_trace(cfg);
    if (!t.all_ok()) {
      std::cerr << "calibrate: reference trace failed its own chain checks\n";
      return 1;
    }
    j["trace_reference"] = {{"Q", cfg.Q},
                            {"u", cfg.u},
                            {"h", cfg.h},
                            {"s", cfg.s},
                            {"z", cfg.z},
                            {"M_sharp", t.M_sharp.get_str()},
                            {"T_majorant", rat_str(t.T_majorant)},
                            {"U_square", rat_str(t.U_square)},
                            {"U_nonsquare", rat_str(t.U_nonsquare)},
                            {"R_bound_term", rat_str(t.R_bound_term)},
                            {"pi", t.pi_count}};
    std::printf("trace reference: M=%s T=%s U_sq=%s U_nonsq=%s\n", t.M_sharp.get_str().c_str(),
                rat_str(t.T_majorant).c_str(), rat_str(t.U_square).c_str(),
                rat_str(t.U_nonsquare).c_str());
  }

  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "calibrate: cannot write " << out_path << "\n";
    return 1;
  }
  f << j.dump(2) << "\n";
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}
