#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

#include "qbcs/error.hpp"

namespace qbcs {

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

inline double parse_double(std::string_view text) {
  if (text == "inf") return HUGE_VAL;
  double x = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || end != text.data() + text.size())
    throw Error(Errc::parse, "bad number '" + std::string(text) + "'");
  return x;
}

}  // namespace qbcs
