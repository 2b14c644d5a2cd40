#pragma once

#include <array>
#include <charconv>
#include <string>

namespace biped5 {

// Locale-independent, 17 significant digits: parses back bit-exactly.
inline std::string format_double(double v) {
  std::array<char, 40> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

}  // namespace biped5

namespace biped5 {

// Shortest representation that still round-trips.
inline std::string format_shortest(double v) {
  std::array<char, 40> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace biped5
