#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "botlex/error.hpp"

namespace botlex {

// ISO-8601 <-> Unix epoch seconds, self-contained so results never depend
// on the host timezone database.
namespace detail {

inline std::int64_t days_from_civil(std::int64_t y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, std::int64_t& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  y = yr + (m <= 2);
}

inline int parse_int(std::string_view s, std::size_t pos, std::size_t len) {
  int v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (i >= s.size() || s[i] < '0' || s[i] > '9') {
      throw DataError("bad timestamp: " + std::string(s));
    }
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

}  // namespace detail

// Accepts "YYYY-MM-DDTHH:MM:SS" with optional fractional seconds (ignored)
// and optional "Z" / "+HH:MM" / "-HH:MM" offset; bare timestamps are UTC.
inline std::int64_t parse_iso8601(std::string_view s) {
  if (s.size() < 19 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ')
      || s[13] != ':' || s[16] != ':') {
    throw DataError("bad timestamp: " + std::string(s));
  }
  const int year = detail::parse_int(s, 0, 4);
  const int month = detail::parse_int(s, 5, 2);
  const int day = detail::parse_int(s, 8, 2);
  const int hour = detail::parse_int(s, 11, 2);
  const int minute = detail::parse_int(s, 14, 2);
  const int sec = detail::parse_int(s, 17, 2);
  if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 || sec > 60) {
    throw DataError("bad timestamp: " + std::string(s));
  }
  std::size_t i = 19;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  }
  std::int64_t offset = 0;
  if (i < s.size()) {
    if (s[i] == 'Z') {
      ++i;
    } else if (s[i] == '+' || s[i] == '-') {
      const int sign = s[i] == '+' ? 1 : -1;
      const int oh = detail::parse_int(s, i + 1, 2);
      if (i + 3 >= s.size() || s[i + 3] != ':') throw DataError("bad timestamp: " + std::string(s));
      const int om = detail::parse_int(s, i + 4, 2);
      offset = sign * (oh * 3600 + om * 60);
      i += 6;
    }
  }
  if (i != s.size()) throw DataError("bad timestamp: " + std::string(s));
  const std::int64_t days = detail::days_from_civil(year, month, day);
  return days * 86400 + hour * 3600 + minute * 60 + sec - offset;
}

inline std::string format_iso8601(std::int64_t epoch_s) {
  std::int64_t days = epoch_s / 86400;
  std::int64_t rem = epoch_s % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  std::int64_t y;
  int m, d;
  detail::civil_from_days(days, y, m, d);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04lld-%02d-%02dT%02d:%02d:%02dZ",
                static_cast<long long>(y), m, d,
                static_cast<int>(rem / 3600),
                static_cast<int>((rem % 3600) / 60),
                static_cast<int>(rem % 60));
  return buf;
}

}  // namespace botlex
