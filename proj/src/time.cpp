#include "teleop/time.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "teleop/errors.hpp"

namespace teleop {

SimTime from_seconds(double seconds) {
  return SimTime{static_cast<std::int64_t>(std::llround(seconds * 1e6))};
}

double to_seconds(SimTime t) { return static_cast<double>(t.count()) * 1e-6; }

std::string format_seconds(SimTime t) {
  const std::int64_t us = t.count();
  const std::int64_t mag = us < 0 ? -us : us;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%s%lld.%06lld", us < 0 ? "-" : "",
                static_cast<long long>(mag / 1000000), static_cast<long long>(mag % 1000000));
  return buf;
}

SimTime parse_seconds(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() || frac.size() > 6) throw ParseError("", "bad time value '" + std::string(text) + "'");

  std::int64_t secs = 0;
  auto [p, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), secs);
  if (ec != std::errc{} || p != whole.data() + whole.size())
    throw ParseError("", "bad time value '" + std::string(text) + "'");

  std::int64_t micros = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    int digit = 0;
    if (i < frac.size()) {
      if (frac[i] < '0' || frac[i] > '9') throw ParseError("", "bad time value '" + std::string(text) + "'");
      digit = frac[i] - '0';
    }
    micros = micros * 10 + digit;
  }
  const std::int64_t total = secs * 1000000 + micros;
  return SimTime{negative ? -total : total};
}

}  // namespace teleop
