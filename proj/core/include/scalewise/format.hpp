#pragma once

#include <array>
#include <charconv>
#include <string>

namespace scalewise {

/// Shortest decimal text that round-trips to `v`.
inline std::string format_number(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

}  // namespace scalewise
