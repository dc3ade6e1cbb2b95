#include "charmoment/cli.hpp"

#include <omp.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "charmoment/arith.hpp"
#include "charmoment/charsum.hpp"
#include "charmoment/format.hpp"
#include "charmoment/prooflab.hpp"
#include "charmoment/selberg.hpp"
#include "charmoment/squareprod.hpp"
#include "charmoment/weights.hpp"

namespace charmoment::cli {

namespace {

struct CommonOpts {
  uint64_t seed = 0;
  int threads = 0;
  std::string out_path;
  std::string plot_path;
  std::string weights = "unit";
  std::string weights_file;
  std::string filter = "all";
};

void write_artifact(const std::string& text, const std::string& path) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file '" + path + "'");
  f << text;
}

WeightSequence build_weights(const CommonOpts& c, uint64_t u, uint64_t h) {
  WeightPreset p = weight_preset_from_string(c.weights);
  if (p == WeightPreset::File) return WeightSequence::from_file(c.weights_file, u, h);
  return WeightSequence::make(p, u, h, c.seed);
}

std::string complex_str(const std::complex<double>& z) {
  return fmt_g(z.real()) + "," + fmt_g(z.imag());
}

std::string moment_breakdown_csv(const MomentResult& mr) {
  std::string csv = "p,S_re,S_im,abs2s\n";
  for (size_t i = 0; i < mr.primes.size(); ++i) {
    csv += std::to_string(mr.primes[i]) + ',';
    if (mr.exact) {
      long long S = mr.sums_int[i];
      Int pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(S < 0 ? -S : S), 2 * mr.s);
      csv += std::to_string(S) + ",0," + pw.get_str() + '\n';
    } else {
      const auto& S = mr.sums_cpx[i];
      double pw = std::pow(std::norm(S), static_cast<double>(mr.s));
      csv += fmt_g(S.real()) + ',' + fmt_g(S.imag()) + ',' + fmt_g(pw) + '\n';
    }
  }
  return csv;
}

std::vector<uint64_t> parse_u64_list(const std::vector<std::string>& toks) {
  std::vector<uint64_t> vals;
  for (const auto& t : toks) vals.push_back(std::stoull(t));
  return vals;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"character-sum moment and sieve toolkit"};
  app.fallthrough();
  app.set_help_flag("--help", "print help");  // frees -h / --h for interval lengths
  CommonOpts common;
  auto add_subcommand = [&app](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->set_help_flag("--help", "print help");
    return sub;
  };
  app.add_option("--seed", common.seed, "seed feeding all randomness (default 0)");
  app.add_option("--threads", common.threads, "cap on OpenMP threads (0 = all cores)");
  app.add_option("--out", common.out_path, "write the JSON/CSV artifact here");
  app.add_option("--plot-data", common.plot_path, "write figure-ready CSV here");

  // sieve
  auto* sieve_cmd = add_subcommand("sieve", "construct Selberg weights at level z");
  uint64_t sieve_z = 0;
  sieve_cmd->add_option("--z", sieve_z, "sieving level")->required();

  // sum
  auto* sum_cmd = add_subcommand("sum", "weighted character sum over (u, u+h]");
  uint64_t sum_q = 0, sum_u = 0, sum_h = 0;
  sum_cmd->add_option("--q", sum_q, "odd modulus >= 3")->required();
  sum_cmd->add_option("--u", sum_u, "interval offset")->required();
  sum_cmd->add_option("--h", sum_h, "interval length")->required();
  sum_cmd->add_option("--weights", common.weights, "unit|rademacher|unimodular|file");
  sum_cmd->add_option("--weights-file", common.weights_file, "CSV n,re,im for --weights file");
  sum_cmd->add_option("--filter", common.filter, "all|odd|plus1mod4|minus1mod4");

  // moment
  auto* mom_cmd = add_subcommand("moment", "moment M_{2s} over primes in [q-lo, q-hi]");
  uint64_t mom_qlo = 0, mom_qhi = 0, mom_u = 0, mom_h = 0;
  unsigned mom_s = 1;
  std::string mom_breakdown;
  mom_cmd->add_option("--q-lo", mom_qlo)->required();
  mom_cmd->add_option("--q-hi", mom_qhi)->required();
  mom_cmd->add_option("--u", mom_u)->required();
  mom_cmd->add_option("--h", mom_h)->required();
  mom_cmd->add_option("--s", mom_s, "half the moment order (default 1)");
  mom_cmd->add_option("--weights", common.weights);
  mom_cmd->add_option("--weights-file", common.weights_file);
  mom_cmd->add_option("--filter", common.filter);
  mom_cmd->add_option("--breakdown", mom_breakdown, "write per-prime CSV p,S_re,S_im,abs2s here");

  // rcount
  auto* rc_cmd = add_subcommand("rcount", "count t-tuples with square product");
  uint64_t rc_u = 0, rc_h = 0;
  unsigned rc_t = 2;
  std::string rc_method = "kernel";
  rc_cmd->add_option("--u", rc_u)->required();
  rc_cmd->add_option("--h", rc_h)->required();
  rc_cmd->add_option("--t", rc_t)->required();
  rc_cmd->add_option("--method", rc_method, "brute|structured|kernel");

  // decompose-check
  auto* dc_cmd = add_subcommand("decompose-check", "verify the 2-adic decomposition identity");
  uint64_t dc_q = 0, dc_u = 0, dc_h = 0;
  dc_cmd->add_option("--q", dc_q, "odd modulus >= 3")->required();
  dc_cmd->add_option("--u", dc_u)->required();
  dc_cmd->add_option("--h", dc_h)->required();
  dc_cmd->add_option("--weights", common.weights);
  dc_cmd->add_option("--weights-file", common.weights_file);

  // trace
  auto* tr_cmd = add_subcommand("trace", "trace the sieve majorization chain exactly");
  ExperimentConfig tr_cfg;
  std::string tr_sharp = "plus", tr_eps;
  tr_cmd->add_option("--Q", tr_cfg.Q)->required();
  tr_cmd->add_option("--u", tr_cfg.u)->required();
  tr_cmd->add_option("--h", tr_cfg.h)->required();
  tr_cmd->add_option("--s", tr_cfg.s);
  tr_cmd->add_option("--z", tr_cfg.z, "sieving level (overrides --epsilon)");
  tr_cmd->add_option("--epsilon", tr_eps, "rational in (0,1/3); z = ceil(Q^epsilon)");
  tr_cmd->add_option("--weights", common.weights);
  tr_cmd->add_option("--sharp", tr_sharp, "plus|minus residue class mod 4");

  // scan-burgess
  auto* sb_cmd = add_subcommand("scan-burgess", "windowed character-sum scan");
  uint64_t sb_mlo = 3, sb_mhi = 0;
  std::vector<std::string> sb_vlist;
  sb_cmd->add_option("--m-lo", sb_mlo)->required();
  sb_cmd->add_option("--m-hi", sb_mhi)->required();
  sb_cmd->add_option("--v-list", sb_vlist, "window lengths (default m^1/4, m^1/2, m^3/4)")
      ->delimiter(',');

  // scan-grh
  auto* sg_cmd = add_subcommand("scan-grh", "initial-interval character-sum scan");
  std::vector<std::string> sg_mlist, sg_tlist;
  uint64_t sg_mlo = 0, sg_mhi = 0;
  sg_cmd->add_option("--m-list", sg_mlist, "explicit odd moduli")->delimiter(',');
  sg_cmd->add_option("--m-lo", sg_mlo);
  sg_cmd->add_option("--m-hi", sg_mhi);
  sg_cmd->add_option("--t-list", sg_tlist, "interval endpoints T")->delimiter(',')->required();

  // scan-conjecture
  auto* sc_cmd = add_subcommand("scan-conjecture", "square-product tuple exponent scan");
  std::vector<std::string> sc_ulist, sc_hlist;
  unsigned sc_t = 4;
  sc_cmd->add_option("--t", sc_t, "tuple length: 2 or 4");
  sc_cmd->add_option("--u-list", sc_ulist)->delimiter(',')->required();
  sc_cmd->add_option("--h-list", sc_hlist)->delimiter(',')->required();

  // report
  auto* rp_cmd = add_subcommand("report", "moment table with bound-term ratios");
  std::vector<std::string> rp_qlist, rp_hlist, rp_ulist;
  bool rp_uhalf = false;
  unsigned rp_s = 1;
  rp_cmd->add_option("--q-list", rp_qlist)->delimiter(',')->required();
  rp_cmd->add_option("--h-list", rp_hlist)->delimiter(',')->required();
  rp_cmd->add_option("--u-list", rp_ulist, "interval offsets (or use --u-half)")->delimiter(',');
  rp_cmd->add_flag("--u-half", rp_uhalf, "set u = floor(Q/2) per row");
  rp_cmd->add_option("--s", rp_s);
  rp_cmd->add_option("--weights", common.weights);
  rp_cmd->add_option("--weights-file", common.weights_file);

  app.require_subcommand(1);

  std::vector<std::string> argv_vec = args;
  argv_vec.insert(argv_vec.begin(), "charmoment");
  std::vector<const char*> argv;
  for (const auto& s : argv_vec) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  if (common.threads > 0) omp_set_num_threads(common.threads);

  try {
    if (*sieve_cmd) {
      SieveSystem sys = selberg_lambdas(sieve_z);
      std::string text = sieve_to_json(sys);
      if (common.out_path.empty())
        out << text;
      else
        write_artifact(text, common.out_path);
      return 0;
    }

    if (*sum_cmd) {
      WeightSequence w = build_weights(common, sum_u, sum_h);
      ClassFilter f = class_filter_from_string(common.filter);
      nlohmann::json j = {{"q", sum_q}, {"u", sum_u},       {"h", sum_h},
                          {"filter", common.filter},        {"weights", common.weights},
                          {"seed", common.seed}};
      if (w.mode == WeightMode::ExactInt) {
        long long v = char_sum_int(sum_q, w, f);
        out << v << "\n";
        j["value"] = std::to_string(v);
      } else {
        auto v = char_sum_complex(sum_q, w, f);
        out << complex_str(v) << "\n";
        j["value"] = {v.real(), v.imag()};
      }
      write_artifact(j.dump(2) + "\n", common.out_path);
      return 0;
    }

    if (*mom_cmd) {
      WeightSequence w = build_weights(common, mom_u, mom_h);
      ClassFilter f = class_filter_from_string(common.filter);
      PrimeRange pr = primes_in(mom_qlo, mom_qhi);
      MomentResult mr = moment(pr, w, mom_s, f);
      if (mr.empty_range_warning) err << "warning: no odd primes in [q-lo, q-hi]; moment is 0\n";
      nlohmann::json j = {{"q_lo", mom_qlo}, {"q_hi", mom_qhi}, {"u", mom_u},
                          {"h", mom_h},      {"s", mom_s},      {"filter", common.filter},
                          {"weights", common.weights},          {"seed", common.seed},
                          {"pi", mr.primes.size()},
                          {"empty_range", mr.empty_range_warning}};
      if (mr.exact) {
        out << mr.value.get_str() << "\n";
        j["M"] = mr.value.get_str();
      } else {
        out << fmt_g(mr.value_c) << "\n";
        j["M"] = mr.value_c;
      }
      write_artifact(j.dump(2) + "\n", common.out_path);
      if (!mom_breakdown.empty()) write_artifact(moment_breakdown_csv(mr), mom_breakdown);
      return 0;
    }

    if (*rc_cmd) {
      uint64_t count = 0;
      if (rc_method == "brute")
        count = r_count_brute(rc_u, rc_h, rc_t);
      else if (rc_method == "structured") {
        if (rc_t != 2) throw std::domain_error("rcount: --method structured needs --t 2");
        count = r2_structured(rc_u, rc_h);
      } else if (rc_method == "kernel")
        count = r_count_kernel(rc_u, rc_h, rc_t);
      else
        throw std::invalid_argument("rcount: unknown method '" + rc_method + "'");
      out << count << "\n";
      nlohmann::json j = {{"u", rc_u}, {"h", rc_h}, {"t", rc_t}, {"method", rc_method},
                          {"count", count}};
      write_artifact(j.dump(2) + "\n", common.out_path);
      return 0;
    }

    if (*dc_cmd) {
      WeightSequence w = build_weights(common, dc_u, dc_h);
      if (w.mode != WeightMode::ExactInt)
        throw std::invalid_argument("decompose-check: exact-int weights required");
      DyadicDecomposition d = dyadic_decompose(w);
      long long lhs = char_sum_int(dc_q, w, ClassFilter::All);
      long long rhs = dyadic_recompose_int(dc_q, d);
      nlohmann::json j;
      j["q"] = dc_q;
      j["u"] = dc_u;
      j["h"] = dc_h;
      j["ell"] = d.ell;
      nlohmann::json levels = nlohmann::json::array();
      for (const auto& part : d.parts)
        levels.push_back({{"i", part.i}, {"covered", part.covered},
                          {"u_i", part.beta.u}, {"h_i", part.beta.h}});
      j["levels"] = std::move(levels);
      j["remainder_count"] = d.remainder_count;
      j["lhs"] = lhs;
      j["rhs"] = rhs;
      j["ok"] = (lhs == rhs);
      std::string text = j.dump(2) + "\n";
      out << text;
      write_artifact(text, common.out_path);
      return lhs == rhs ? 0 : 1;
    }

    if (*tr_cmd) {
      tr_cfg.preset = weight_preset_from_string(common.weights);
      tr_cfg.seed = common.seed;
      tr_cfg.sharp = (tr_sharp == "minus") ? -1 : +1;
      if (tr_sharp != "plus" && tr_sharp != "minus")
        throw std::invalid_argument("trace: --sharp must be plus or minus");
      if (!tr_eps.empty()) tr_cfg.epsilon = rat_parse(tr_eps);
      ProofTrace t = proof_trace(tr_cfg);
      std::string text = trace_to_json(t);
      out << text;
      write_artifact(text, common.out_path);
      return 0;
    }

    if (*sb_cmd) {
      auto rows = burgess_scan(sb_mlo, sb_mhi, parse_u64_list(sb_vlist), common.seed);
      if (!common.plot_path.empty()) write_artifact(scan_plot_csv(rows), common.plot_path);
      std::string csv = scan_to_csv(rows);
      if (common.out_path.empty())
        out << csv;
      else
        write_artifact(csv, common.out_path);
      return 0;
    }

    if (*sg_cmd) {
      std::vector<uint64_t> ms = parse_u64_list(sg_mlist);
      if (ms.empty()) {
        if (sg_mhi < sg_mlo || sg_mlo < 3)
          throw std::invalid_argument("scan-grh: give --m-list or a valid --m-lo/--m-hi range");
        for (uint64_t m = sg_mlo | 1; m <= sg_mhi; m += 2) ms.push_back(m);
      }
      auto rows = grh_scan(ms, parse_u64_list(sg_tlist));
      if (!common.plot_path.empty()) write_artifact(scan_plot_csv(rows), common.plot_path);
      std::string csv = scan_to_csv(rows);
      if (common.out_path.empty())
        out << csv;
      else
        write_artifact(csv, common.out_path);
      return 0;
    }

    if (*sc_cmd) {
      auto rows = conjecture_scan(parse_u64_list(sc_ulist), parse_u64_list(sc_hlist), sc_t);
      std::string csv = "u,h,t,count,exponent,ratio,hlogh_ratio\n";
      for (const auto& r : rows)
        csv += std::to_string(r.u) + ',' + std::to_string(r.h) + ',' + std::to_string(r.t) + ',' +
               std::to_string(r.count) + ',' + fmt_g(r.exponent) + ',' + fmt_g(r.ratio) + ',' +
               fmt_g(r.hlogh_ratio) + '\n';
      if (!common.plot_path.empty()) {
        std::string plot = "h,count\n";
        for (const auto& r : rows) plot += std::to_string(r.h) + ',' + std::to_string(r.count) + '\n';
        write_artifact(plot, common.plot_path);
      }
      if (common.out_path.empty())
        out << csv;
      else
        write_artifact(csv, common.out_path);
      return 0;
    }

    if (*rp_cmd) {
      std::vector<uint64_t> qs = parse_u64_list(rp_qlist);
      std::vector<uint64_t> hs = parse_u64_list(rp_hlist);
      std::vector<uint64_t> us = parse_u64_list(rp_ulist);
      if (!rp_uhalf && us.empty())
        throw std::invalid_argument("report: give --u-list or --u-half");
      std::vector<ExperimentConfig> grid;
      for (uint64_t Q : qs)
        for (uint64_t h : hs) {
          std::vector<uint64_t> row_us = rp_uhalf ? std::vector<uint64_t>{Q / 2} : us;
          for (uint64_t u : row_us) {
            ExperimentConfig cfg;
            cfg.Q = Q;
            cfg.u = u;
            cfg.h = h;
            cfg.s = rp_s;
            cfg.preset = weight_preset_from_string(common.weights);
            cfg.seed = common.seed;
            grid.push_back(cfg);
          }
        }
      auto rows = theorem_report(grid);
      std::string text = report_to_json(rows);
      if (common.out_path.empty())
        out << text;
      else
        write_artifact(text, common.out_path);
      if (!common.plot_path.empty()) write_artifact(report_plot_csv(rows), common.plot_path);
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  err << "usage error: no subcommand\n";
  return 2;
}

} // namespace charmoment::cli
