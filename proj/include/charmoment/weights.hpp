#ifndef CHARMOMENT_WEIGHTS_HPP
#define CHARMOMENT_WEIGHTS_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace charmoment {

enum class WeightMode { ExactInt, Complex };
enum class WeightPreset { Unit, Rademacher, Unimodular, File };
enum class ClassFilter { All, Odd, Plus1Mod4, Minus1Mod4 };

const char* to_string(WeightPreset p);
const char* to_string(ClassFilter f);
WeightPreset weight_preset_from_string(const std::string& s);
ClassFilter class_filter_from_string(const std::string& s);

// Coefficients alpha_{u+1}, ..., alpha_{u+h} on the half-open interval
// (u, u+h], with |alpha_n| <= 1. Exact-int mode keeps values in {-1,0,1}
// and backs every test assertion; complex mode is for experiments.
// Seeded presets are reproducible bit-for-bit from (preset, seed, u, h).
struct WeightSequence {
  uint64_t u = 0;
  uint64_t h = 0;
  WeightMode mode = WeightMode::ExactInt;
  WeightPreset preset = WeightPreset::Unit;
  uint64_t seed = 0;
  std::vector<int8_t> ivals;                  // exact-int mode
  std::vector<std::complex<double>> cvals;    // complex mode

  int8_t ival(size_t j) const { return ivals[j]; }
  std::complex<double> cval(size_t j) const {
    return mode == WeightMode::ExactInt ? std::complex<double>(ivals[j], 0.0) : cvals[j];
  }
  bool all_zero() const;

  static WeightSequence unit(uint64_t u, uint64_t h);
  static WeightSequence zero(uint64_t u, uint64_t h);
  static WeightSequence rademacher(uint64_t u, uint64_t h, uint64_t seed);
  static WeightSequence unimodular(uint64_t u, uint64_t h, uint64_t seed);
  // CSV rows "n,re,im" with u < n <= u+h; missing rows mean 0. Exact-int
  // mode is chosen when every row has im = 0 and re in {-1, 0, 1}.
  static WeightSequence from_file(const std::string& path, uint64_t u, uint64_t h);
  static WeightSequence from_ints(uint64_t u, uint64_t h, std::vector<int8_t> vals);

  static WeightSequence make(WeightPreset p, uint64_t u, uint64_t h, uint64_t seed,
                             const std::string& file_path = "");
};

inline bool filter_hits(ClassFilter f, uint64_t n) {
  switch (f) {
    case ClassFilter::All: return true;
    case ClassFilter::Odd: return (n & 1) != 0;
    case ClassFilter::Plus1Mod4: return (n & 3) == 1;
    case ClassFilter::Minus1Mod4: return (n & 3) == 3;
  }
  return false;
}

} // namespace charmoment

#endif
