#include "charmoment/weights.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "charmoment/arith.hpp"
#include "charmoment/rng.hpp"

namespace charmoment {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_span(uint64_t u, uint64_t h) {
  if (h < 1) throw std::domain_error("weights: h must be >= 1");
  if (u > kMaxEndpoint - h) throw std::length_error("weights: u+h exceeds the 2^62 capacity");
}

std::mt19937_64 engine_for(uint64_t seed, uint64_t u, uint64_t h, uint64_t tag) {
  return std::mt19937_64(mix_seed(seed, u, h, tag));
}

} // namespace

const char* to_string(WeightPreset p) {
  switch (p) {
    case WeightPreset::Unit: return "unit";
    case WeightPreset::Rademacher: return "rademacher";
    case WeightPreset::Unimodular: return "unimodular";
    case WeightPreset::File: return "file";
  }
  return "?";
}

const char* to_string(ClassFilter f) {
  switch (f) {
    case ClassFilter::All: return "all";
    case ClassFilter::Odd: return "odd";
    case ClassFilter::Plus1Mod4: return "plus1mod4";
    case ClassFilter::Minus1Mod4: return "minus1mod4";
  }
  return "?";
}

WeightPreset weight_preset_from_string(const std::string& s) {
  if (s == "unit") return WeightPreset::Unit;
  if (s == "rademacher") return WeightPreset::Rademacher;
  if (s == "unimodular") return WeightPreset::Unimodular;
  if (s == "file") return WeightPreset::File;
  throw std::invalid_argument("unknown weight preset '" + s + "'");
}

ClassFilter class_filter_from_string(const std::string& s) {
  if (s == "all") return ClassFilter::All;
  if (s == "odd") return ClassFilter::Odd;
  if (s == "plus1mod4") return ClassFilter::Plus1Mod4;
  if (s == "minus1mod4") return ClassFilter::Minus1Mod4;
  throw std::invalid_argument("unknown class filter '" + s + "'");
}

bool WeightSequence::all_zero() const {
  if (mode == WeightMode::ExactInt) {
    for (int8_t v : ivals)
      if (v != 0) return false;
    return true;
  }
  for (const auto& z : cvals)
    if (z != std::complex<double>(0.0, 0.0)) return false;
  return true;
}

WeightSequence WeightSequence::unit(uint64_t u, uint64_t h) {
  check_span(u, h);
  WeightSequence w;
  w.u = u;
  w.h = h;
  w.preset = WeightPreset::Unit;
  w.ivals.assign(static_cast<size_t>(h), 1);
  return w;
}

WeightSequence WeightSequence::zero(uint64_t u, uint64_t h) {
  check_span(u, h);
  WeightSequence w;
  w.u = u;
  w.h = h;
  w.preset = WeightPreset::File;
  w.ivals.assign(static_cast<size_t>(h), 0);
  return w;
}

WeightSequence WeightSequence::rademacher(uint64_t u, uint64_t h, uint64_t seed) {
  check_span(u, h);
  WeightSequence w;
  w.u = u;
  w.h = h;
  w.preset = WeightPreset::Rademacher;
  w.seed = seed;
  w.ivals.resize(static_cast<size_t>(h));
  auto rng = engine_for(seed, u, h, 0x7261646dULL);  // "radm"
  for (auto& v : w.ivals) v = (rng() & 1) ? int8_t(1) : int8_t(-1);
  return w;
}

WeightSequence WeightSequence::unimodular(uint64_t u, uint64_t h, uint64_t seed) {
  check_span(u, h);
  WeightSequence w;
  w.u = u;
  w.h = h;
  w.mode = WeightMode::Complex;
  w.preset = WeightPreset::Unimodular;
  w.seed = seed;
  w.cvals.resize(static_cast<size_t>(h));
  auto rng = engine_for(seed, u, h, 0x756e696dULL);  // "unim"
  for (auto& z : w.cvals) {
    // 53-bit mantissa draw; avoids the implementation-defined distributions
    double t = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    z = std::polar(1.0, kTwoPi * t);
  }
  return w;
}

WeightSequence WeightSequence::from_ints(uint64_t u, uint64_t h, std::vector<int8_t> vals) {
  check_span(u, h);
  if (vals.size() != h) throw std::invalid_argument("weights: value count must equal h");
  for (int8_t v : vals)
    if (v < -1 || v > 1) throw std::domain_error("weights: exact-int values must lie in {-1,0,1}");
  WeightSequence w;
  w.u = u;
  w.h = h;
  w.preset = WeightPreset::File;
  w.ivals = std::move(vals);
  return w;
}

WeightSequence WeightSequence::from_file(const std::string& path, uint64_t u, uint64_t h) {
  check_span(u, h);
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("weights: cannot open file '" + path + "'");
  std::vector<std::complex<double>> vals(static_cast<size_t>(h), {0.0, 0.0});
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string tok;
    uint64_t n = 0;
    double re = 0, im = 0;
    if (!std::getline(ss, tok, ',')) continue;
    n = std::stoull(tok);
    if (!std::getline(ss, tok, ',')) throw std::invalid_argument("weights: bad CSV row " + std::to_string(lineno));
    re = std::stod(tok);
    if (std::getline(ss, tok, ',')) im = std::stod(tok);
    if (n <= u || n > u + h)
      throw std::domain_error("weights: row n outside (u, u+h] at line " + std::to_string(lineno));
    if (re * re + im * im > 1.0 + 1e-12)
      throw std::domain_error("weights: |alpha_n| > 1 at line " + std::to_string(lineno));
    vals[static_cast<size_t>(n - u - 1)] = {re, im};
  }
  bool exact = true;
  for (const auto& z : vals)
    if (z.imag() != 0.0 || (z.real() != 0.0 && z.real() != 1.0 && z.real() != -1.0)) exact = false;

  WeightSequence w;
  w.u = u;
  w.h = h;
  w.preset = WeightPreset::File;
  if (exact) {
    w.ivals.resize(static_cast<size_t>(h));
    for (size_t j = 0; j < vals.size(); ++j) w.ivals[j] = static_cast<int8_t>(vals[j].real());
  } else {
    w.mode = WeightMode::Complex;
    w.cvals = std::move(vals);
  }
  return w;
}

WeightSequence WeightSequence::make(WeightPreset p, uint64_t u, uint64_t h, uint64_t seed,
                                    const std::string& file_path) {
  switch (p) {
    case WeightPreset::Unit: return unit(u, h);
    case WeightPreset::Rademacher: return rademacher(u, h, seed);
    case WeightPreset::Unimodular: return unimodular(u, h, seed);
    case WeightPreset::File:
      if (file_path.empty()) return zero(u, h);
      return from_file(file_path, u, h);
  }
  throw std::invalid_argument("weights: unknown preset");
}

} // namespace charmoment
