#ifndef CHARMOMENT_FORMAT_HPP
#define CHARMOMENT_FORMAT_HPP

#include <cstdio>
#include <string>

namespace charmoment {

// Shortest stable decimal form; used for every float that lands in a
// report so that reruns are byte-identical.
inline std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

} // namespace charmoment

#endif
