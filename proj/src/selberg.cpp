#include "charmoment/selberg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "json.hpp"

#include "charmoment/arith.hpp"

namespace charmoment {

namespace {

struct SmallArith {
  std::vector<uint32_t> spf;  // smallest prime factor, spf[1] = 1
  std::vector<uint64_t> phi;
  std::vector<int8_t> mu;

  explicit SmallArith(uint64_t z) {
    size_t n = static_cast<size_t>(z) + 1;
    spf.assign(n, 0);
    phi.assign(n, 0);
    mu.assign(n, 0);
    if (z >= 1) {
      spf[1] = 1;
      phi[1] = 1;
      mu[1] = 1;
    }
    for (size_t i = 2; i < n; ++i) {
      if (spf[i] == 0)
        for (size_t j = i; j < n; j += i)
          if (spf[j] == 0) spf[j] = static_cast<uint32_t>(i);
    }
    for (size_t i = 2; i < n; ++i) {
      size_t p = spf[i];
      size_t m = i / p;
      if (m % p == 0) {
        mu[i] = 0;
        phi[i] = phi[m] * p;
      } else {
        mu[i] = -mu[m];
        phi[i] = phi[m] * (p - 1);
      }
    }
  }

  bool squarefree(uint64_t q) const { return mu[static_cast<size_t>(q)] != 0; }
};

} // namespace

Rat big_g(uint64_t z) {
  if (z < 1) throw std::domain_error("big_g: z must be >= 1");
  SmallArith tab(z);
  Rat g(0);
  for (uint64_t q = 1; q <= z; ++q)
    if (tab.squarefree(q)) g += Rat(1, tab.phi[static_cast<size_t>(q)]);
  return g;
}

SieveSystem selberg_lambdas(uint64_t z) {
  if (z < 2) throw std::domain_error("selberg_lambdas: z must be >= 2");
  SmallArith tab(z);

  std::vector<uint64_t> sqfree;
  for (uint64_t q = 1; q <= z; ++q)
    if (tab.squarefree(q)) sqfree.push_back(q);

  std::vector<Rat> inv_phi(static_cast<size_t>(z) + 1, Rat(0));
  for (uint64_t q : sqfree) inv_phi[static_cast<size_t>(q)] = Rat(1, tab.phi[static_cast<size_t>(q)]);

  SieveSystem sys;
  sys.z = z;
  for (uint64_t q : sqfree) sys.G += inv_phi[static_cast<size_t>(q)];

  // Lambda_d = mu(d) * d/phi(d) * G_d(z/d) / G(z) with
  // G_d(x) = sum over squarefree m <= x coprime to d of 1/phi(m).
  sys.Lambda.reserve(sqfree.size());
  for (uint64_t d : sqfree) {
    uint64_t x = z / d;
    Rat gd(0);
    for (uint64_t m = 1; m <= x; ++m)
      if (tab.squarefree(m) && std::gcd(m, d) == 1) gd += inv_phi[static_cast<size_t>(m)];
    Rat dphi(d, tab.phi[static_cast<size_t>(d)]);
    dphi.canonicalize();  // the two-argument mpq ctor does not reduce
    Rat lam = Rat(tab.mu[static_cast<size_t>(d)]) * dphi * gd / sys.G;
    sys.Lambda.emplace_back(d, lam);
  }

  // lambda_plus_n = sum over lcm[r,s] = n; symmetric pairs expanded once.
  std::map<uint64_t, Rat> lp;
  for (size_t i = 0; i < sys.Lambda.size(); ++i) {
    auto [r, lr] = sys.Lambda[i];
    lp[r] += lr * lr;  // r = s
    for (size_t j = i + 1; j < sys.Lambda.size(); ++j) {
      auto [s, ls] = sys.Lambda[j];
      uint64_t l = r / std::gcd(r, s) * s;
      lp[l] += 2 * lr * ls;
    }
  }
  for (auto& [n, v] : lp)
    if (v != 0) sys.lambda_plus.emplace_back(n, v);
  return sys;
}

Rat SieveSystem::divisor_weight(uint64_t q) const {
  Rat w(0);
  for (const auto& [e, v] : lambda_plus)
    if (q % e == 0) w += v;
  return w;
}

Rat SieveSystem::lambda_divisor_sum_squared(uint64_t q) const {
  Rat s(0);
  for (const auto& [d, v] : Lambda)
    if (q % d == 0) s += v;
  return s * s;
}

Rat SieveSystem::lambda_plus_l1() const {
  Rat s(0);
  for (const auto& [n, v] : lambda_plus) s += rat_abs(v);
  return s;
}

Rat sieve_upper_count(const SieveSystem& sys, uint64_t Z) {
  if (Z < 1) return Rat(0);
  Rat t(0);
  for (const auto& [e, v] : sys.lambda_plus) {
    // multiples of e in the closed interval [Z, 2Z]
    uint64_t cnt = 2 * Z / e - (Z - 1) / e;
    if (cnt > 0) t += v * Rat(cnt);
  }
  return t;
}

SieveCheckReport verify_sieve(const SieveSystem& sys, uint64_t qmax) {
  if (qmax < 1) throw std::domain_error("verify_sieve: qmax must be >= 1");
  SieveCheckReport rep;
  auto add = [&](const std::string& name, bool pass, const std::string& detail = "") {
    rep.checks.push_back({name, pass, detail});
  };

  bool lambda1 = !sys.Lambda.empty() && sys.Lambda.front().first == 1 && sys.Lambda.front().second == 1;
  add("Lambda_1 = 1", lambda1);

  bool bounded = true;
  for (const auto& [d, v] : sys.Lambda)
    if (rat_abs(v) > 1) bounded = false;
  add("|Lambda_d| <= 1", bounded);

  bool support = true;
  for (const auto& [n, v] : sys.lambda_plus)
    if (n >= sys.z * sys.z) support = false;
  add("lambda_plus support < z^2", support);

  // Optimality witness: the quadratic form equals 1/G exactly.
  Rat qform(0);
  for (const auto& [d1, v1] : sys.Lambda)
    for (const auto& [d2, v2] : sys.Lambda) {
      uint64_t l = d1 / std::gcd(d1, d2) * d2;
      qform += v1 * v2 / Rat(l);
    }
  add("Q(Lambda) = 1/G(z)", qform == 1 / sys.G, rat_str(qform));

  std::vector<uint64_t> zprimes = primes_in_serial(2, sys.z).primes;
  bool square_id = true, nonneg = true, coprime_one = true;
  for (uint64_t q = 1; q <= qmax; ++q) {
    Rat lhs = sys.divisor_weight(q);
    if (lhs != sys.lambda_divisor_sum_squared(q)) square_id = false;
    if (lhs < 0) nonneg = false;
    bool coprime = true;
    for (uint64_t p : zprimes)
      if (q % p == 0) {
        coprime = false;
        break;
      }
    if (coprime && lhs != 1) coprime_one = false;
  }
  add("sum_{e|q} lambda_plus_e = (sum_{d|q} Lambda_d)^2", square_id);
  add("sum_{e|q} lambda_plus_e >= 0", nonneg);
  add("= 1 when gcd(q, P) = 1", coprime_one);

  double lz = std::log(static_cast<double>(sys.z));
  rep.rho1 = rat_double(sys.lambda_plus_l1()) / (static_cast<double>(sys.z) * static_cast<double>(sys.z) / (lz * lz));
  return rep;
}

std::string sieve_to_json(const SieveSystem& sys) {
  nlohmann::json j;
  j["z"] = sys.z;
  j["G"] = rat_str(sys.G);
  nlohmann::json lam = nlohmann::json::array();
  for (const auto& [d, v] : sys.Lambda) lam.push_back({d, rat_str(v)});
  j["Lambda"] = std::move(lam);
  nlohmann::json lp = nlohmann::json::array();
  for (const auto& [n, v] : sys.lambda_plus) lp.push_back({n, rat_str(v)});
  j["lambda_plus"] = std::move(lp);
  return j.dump(2) + "\n";
}

SieveSystem sieve_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SieveSystem sys;
  sys.z = j.at("z").get<uint64_t>();
  sys.G = rat_parse(j.at("G").get<std::string>());
  for (const auto& e : j.at("Lambda"))
    sys.Lambda.emplace_back(e.at(0).get<uint64_t>(), rat_parse(e.at(1).get<std::string>()));
  for (const auto& e : j.at("lambda_plus"))
    sys.lambda_plus.emplace_back(e.at(0).get<uint64_t>(), rat_parse(e.at(1).get<std::string>()));
  return sys;
}

} // namespace charmoment
