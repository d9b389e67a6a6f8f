#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace mabbob {

// Shortest decimal text that parses back to the same double.
inline std::string format_shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Scientific notation with 18 significant digits.
inline std::string format_full(double v) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17e", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace mabbob
