#pragma once

#include <charconv>
#include <string>

namespace cricrec {

// Shortest decimal text that reads back to the same double.
inline std::string format_number(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace cricrec
