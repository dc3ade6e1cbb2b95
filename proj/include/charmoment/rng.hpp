#ifndef CHARMOMENT_RNG_HPP
#define CHARMOMENT_RNG_HPP

#include <cstdint>

namespace charmoment {

// splitmix64 step; the de-facto standard seed scrambler.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Combine a user seed with context words into one engine seed.
inline uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
  uint64_t x = splitmix64(seed ^ 0x6a09e667f3bcc908ULL);
  x = splitmix64(x ^ a);
  x = splitmix64(x ^ b);
  x = splitmix64(x ^ c);
  return x;
}

} // namespace charmoment

#endif
