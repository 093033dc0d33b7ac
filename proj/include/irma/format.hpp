#pragma once

#include <charconv>
#include <string>

namespace irma {

// Shortest decimal that round-trips to the same double; keeps emitted CSV
// byte-stable across re-parses.
inline std::string format_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace irma
