#ifndef CHARMOMENT_RATIONAL_HPP
#define CHARMOMENT_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace charmoment {

// Exact arithmetic backends for everything the identities depend on.
using Int = mpz_class;
using Rat = mpq_class;

// "num/den" (den omitted when 1), matching the serialized schema.
inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline Rat rat_parse(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("rat_parse: malformed rational '" + s + "'");
  q.canonicalize();
  return q;
}

inline double rat_double(const Rat& q) { return q.get_d(); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

} // namespace charmoment

#endif
