#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "charmoment/cli.hpp"
#include "charmoment/selberg.hpp"

using namespace charmoment;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("rcount prints the count") {
  RunResult r = run_cli({"rcount", "--u", "4", "--h", "4", "--t", "2", "--method", "brute"});
  CHECK(r.code == 0);
  CHECK(r.out == "4\n");
  CHECK(run_cli({"rcount", "--u", "4", "--h", "4", "--t", "2", "--method", "structured"}).out ==
        "4\n");
  CHECK(run_cli({"rcount", "--u", "4", "--h", "4", "--t", "2", "--method", "kernel"}).out == "4\n");
}

TEST_CASE("sieve JSON artifact") {
  std::string path = "cli_test_sieve.json";
  RunResult r = run_cli({"sieve", "--z", "3", "--out", path});
  CHECK(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(slurp(path));
  CHECK(j["z"] == 3);
  CHECK(j["Lambda"][0][1] == "1");
  CHECK(j["Lambda"][1][1] == "-4/5");
  CHECK(j["Lambda"][2][1] == "-3/5");

  // round-trip into an equal in-memory system
  SieveSystem back = sieve_from_json(slurp(path));
  SieveSystem direct = selberg_lambdas(3);
  CHECK(back.G == direct.G);
  CHECK(back.Lambda == direct.Lambda);
  CHECK(back.lambda_plus == direct.lambda_plus);
  std::remove(path.c_str());
}

TEST_CASE("moment prints the exact value") {
  RunResult r = run_cli({"moment", "--q-lo", "10", "--q-hi", "20", "--u", "2", "--h", "2", "--s",
                         "1", "--weights", "unit"});
  CHECK(r.code == 0);
  CHECK(r.out == "8\n");
}

TEST_CASE("moment breakdown CSV") {
  std::string path = "cli_test_breakdown.csv";
  RunResult r = run_cli({"moment", "--q-lo", "10", "--q-hi", "20", "--u", "2", "--h", "2",
                         "--breakdown", path});
  CHECK(r.code == 0);
  CHECK(slurp(path) == "p,S_re,S_im,abs2s\n11,2,0,4\n13,2,0,4\n17,0,0,0\n19,0,0,0\n");
  std::remove(path.c_str());
}

TEST_CASE("sum with class filters and file weights") {
  CHECK(run_cli({"sum", "--q", "7", "--u", "0", "--h", "6"}).out == "0\n");
  CHECK(run_cli({"sum", "--q", "7", "--u", "0", "--h", "6", "--filter", "odd"}).out == "-1\n");

  std::string wpath = "cli_test_weights.csv";
  {
    std::ofstream f(wpath);
    f << "1,1,0\n3,-1,0\n";  // alpha_2 missing, so 0
  }
  RunResult r = run_cli({"sum", "--q", "7", "--u", "0", "--h", "3", "--weights", "file",
                         "--weights-file", wpath});
  CHECK(r.code == 0);
  CHECK(r.out == "2\n");  // (1/7) - (3/7) = 1 - (-1)
  std::remove(wpath.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"rcount", "--u", "4"}).code == 2);              // missing required flags
  CHECK(run_cli({"rcount", "--u", "4", "--h", "4", "--t", "2", "--bogus", "1"}).code == 2);
  RunResult dom = run_cli({"sum", "--q", "8", "--u", "0", "--h", "3"});
  CHECK(dom.code == 1);
  CHECK(dom.err.find("odd") != std::string::npos);  // names the violated precondition
  RunResult cap = run_cli({"rcount", "--u", "0", "--h", "2000", "--t", "4", "--method", "brute"});
  CHECK(cap.code == 1);
  CHECK(cap.err.find("budget") != std::string::npos);
  CHECK(run_cli({}).code == 2);
}

TEST_CASE("decompose-check exits clean on the identity") {
  RunResult r = run_cli({"decompose-check", "--q", "5", "--u", "0", "--h", "4"});
  CHECK(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["ok"] == true);
  CHECK(j["ell"] == 1);
}

TEST_CASE("trace emits the exact chain") {
  RunResult r = run_cli({"trace", "--Q", "100", "--u", "20", "--h", "4", "--s", "1", "--z", "3"});
  CHECK(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["checks"]["majorant"] == true);
  CHECK(j["checks"]["split"] == true);
  CHECK(j["checks"]["flip"] == true);
}

TEST_CASE("reports are byte-identical across thread counts and reruns") {
  std::vector<std::string> base = {"report", "--q-list", "200,400", "--h-list", "4,8",
                                   "--u-list", "50", "--s", "1", "--weights", "rademacher",
                                   "--seed", "11"};
  auto with_threads = [&](const std::string& n) {
    auto args = base;
    args.push_back("--threads");
    args.push_back(n);
    return run_cli(args);
  };
  RunResult t1 = with_threads("1");
  RunResult t8 = with_threads("8");
  CHECK(t1.code == 0);
  CHECK(t1.out == t8.out);
  CHECK(t1.out == with_threads("3").out);

  RunResult scan1 = run_cli({"scan-burgess", "--m-lo", "3", "--m-hi", "101", "--seed", "5",
                             "--threads", "1"});
  RunResult scan8 = run_cli({"scan-burgess", "--m-lo", "3", "--m-hi", "101", "--seed", "5",
                             "--threads", "8"});
  CHECK(scan1.out == scan8.out);
}

TEST_CASE("JSON artifacts agree with stdout and reparse stably") {
  std::string path = "cli_test_moment.json";
  RunResult r = run_cli({"moment", "--q-lo", "10", "--q-hi", "20", "--u", "2", "--h", "2",
                         "--out", path});
  nlohmann::json j = nlohmann::json::parse(slurp(path));
  CHECK(j["M"].get<std::string>() + "\n" == r.out);
  CHECK(j["pi"] == 4);
  std::remove(path.c_str());

  RunResult t = run_cli({"trace", "--Q", "100", "--u", "20", "--h", "4", "--z", "3"});
  nlohmann::json tj = nlohmann::json::parse(t.out);
  CHECK(nlohmann::json::parse(tj.dump()) == tj);
  CHECK(tj["config"]["z"] == 3);
}

TEST_CASE("scan and conjecture CSV shapes") {
  RunResult grh = run_cli({"scan-grh", "--m-list", "15", "--t-list", "3"});
  CHECK(grh.code == 0);
  CHECK(grh.out.find("m,square_excluded,best_stat") == 0);
  CHECK(grh.out.find("15,0,1.15470053838") != std::string::npos);

  RunResult conj = run_cli({"scan-conjecture", "--t", "4", "--u-list", "4", "--h-list", "2"});
  CHECK(conj.code == 0);
  CHECK(conj.out == "u,h,t,count,exponent,ratio,hlogh_ratio\n4,2,4,8,3,2,2.88539008178\n");
}
