#pragma once

// Small parsing/formatting helpers shared by the text file formats.

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <vector>

#include "rspatio/types.hpp"

namespace rspatio::text {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::string_view strip_comment(std::string_view s) {
  const auto hash = s.find('#');
  return hash == std::string_view::npos ? s : s.substr(0, hash);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T parse_value(std::string_view s, std::string_view what) {
  s = trim(s);
  auto fail = [&]() -> T { throw Error("cannot parse " + std::string(what) + ": '" + std::string(s) + "'"); };
  if constexpr (std::is_same_v<T, bool>) {
    if (s == "1" || s == "true") return true;
    if (s == "0" || s == "false") return false;
    return fail();
  } else {
    T v{};
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return fail();
    return v;
  }
}

template <typename T>
std::string format_value(T v) {
  if constexpr (std::is_same_v<T, bool>) {
    return v ? "1" : "0";
  } else {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
  }
}

/// Fixed-point formatting with `digits` decimals.
inline std::string format_fixed(double v, int digits) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, ptr);
}

/// "x,y,w,h" with integer fields.
inline BoundingBox parse_box(std::string_view s) {
  const auto parts = split(s, ',');
  if (parts.size() != 4) throw Error("expected x,y,w,h but got '" + std::string(s) + "'");
  BoundingBox b{parse_value<int>(parts[0], "box x"), parse_value<int>(parts[1], "box y"),
                parse_value<int>(parts[2], "box w"), parse_value<int>(parts[3], "box h")};
  return b;
}

inline std::string format_box(const BoundingBox& b) {
  return std::to_string(b.x) + "," + std::to_string(b.y) + "," + std::to_string(b.w) + "," + std::to_string(b.h);
}

}  // namespace rspatio::text
