// Copyright 2026 The Smellscape Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "smellscape/record.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "smellscape/error.hpp"
#include "smellscape/text.hpp"

namespace smellscape {

namespace {

// Civil-from-days and days-from-civil, valid across the whole int range.
// (Howard Hinnant's proleptic Gregorian algorithms.)
struct CivilDate {
  int year;
  int month;
  int day;
};

CivilDate civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return {static_cast<int>(y + (m <= 2)), static_cast<int>(m),
          static_cast<int>(d)};
}

std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  return a - floor_div(a, b) * b;
}

bool parse_int(const std::string& s, std::size_t pos, std::size_t len,
               int& out) {
  if (pos + len > s.size()) return false;
  int value = 0;
  for (std::size_t i = 0; i < len; ++i) {
    char c = s[pos + i];
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    value = value * 10 + (c - '0');
  }
  out = value;
  return true;
}

}  // namespace

Timezone Timezone::parse(const std::string& spec) {
  Timezone tz;
  std::string s = trim(spec);
  if (s.empty() || s == "UTC" || s == "utc" || s == "Z" || s == "z") return tz;
  if (s[0] != '+' && s[0] != '-')
    throw Error(errc::bad_argument,
                "timezone must be UTC or a fixed offset like +01:00, got '" +
                    s + "'");
  const int sign = s[0] == '-' ? -1 : 1;
  int hours = 0, minutes = 0;
  if (!parse_int(s, 1, 2, hours))
    throw Error(errc::bad_argument, "bad timezone offset '" + s + "'");
  std::size_t rest = 3;
  if (rest < s.size() && s[rest] == ':') ++rest;
  if (rest < s.size()) {
    if (!parse_int(s, rest, 2, minutes) || rest + 2 != s.size())
      throw Error(errc::bad_argument, "bad timezone offset '" + s + "'");
  } else if (s.size() != 3) {
    throw Error(errc::bad_argument, "bad timezone offset '" + s + "'");
  }
  if (hours > 18 || minutes > 59)
    throw Error(errc::bad_argument, "timezone offset out of range '" + s + "'");
  tz.offset_seconds_ = sign * (hours * 3600 + minutes * 60);
  tz.name_ = s;
  return tz;
}

MonthKey Timezone::month_of(std::int64_t timestamp_utc) const {
  const std::int64_t local = timestamp_utc + offset_seconds_;
  const std::int64_t days = floor_div(local, 86400);
  const CivilDate date = civil_from_days(days);
  return MonthKey::from_parts(date.year, date.month);
}

std::optional<std::int64_t> parse_timestamp(const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) return std::nullopt;

  // Plain integer: epoch seconds.
  bool all_digits = s[0] == '-' ? s.size() > 1 : true;
  for (std::size_t i = (s[0] == '-' ? 1 : 0); i < s.size() && all_digits; ++i)
    all_digits = std::isdigit(static_cast<unsigned char>(s[i])) != 0;
  if (all_digits) {
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size()) return std::nullopt;
    return static_cast<std::int64_t>(v);
  }

  // RFC-3339: YYYY-MM-DD[Tt ]HH:MM:SS[.frac][Z|±HH:MM]
  int year, month, day, hour, minute, second;
  if (s.size() < 19) return std::nullopt;
  if (!parse_int(s, 0, 4, year) || s[4] != '-' || !parse_int(s, 5, 2, month) ||
      s[7] != '-' || !parse_int(s, 8, 2, day))
    return std::nullopt;
  char sep = s[10];
  if (sep != 'T' && sep != 't' && sep != ' ') return std::nullopt;
  if (!parse_int(s, 11, 2, hour) || s[13] != ':' ||
      !parse_int(s, 14, 2, minute) || s[16] != ':' ||
      !parse_int(s, 17, 2, second))
    return std::nullopt;
  if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 ||
      minute > 59 || second > 60)
    return std::nullopt;
  if (second == 60) second = 59;  // fold leap seconds

  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::size_t digits = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      ++pos;
      ++digits;
    }
    if (digits == 0) return std::nullopt;  // fraction truncated toward zero
  }

  std::int64_t offset = 0;
  if (pos < s.size()) {
    char c = s[pos];
    if (c == 'Z' || c == 'z') {
      ++pos;
    } else if (c == '+' || c == '-') {
      int oh, om;
      if (!parse_int(s, pos + 1, 2, oh)) return std::nullopt;
      std::size_t mpos = pos + 3;
      if (mpos < s.size() && s[mpos] == ':') ++mpos;
      if (!parse_int(s, mpos, 2, om)) return std::nullopt;
      offset = (c == '-' ? -1 : 1) * (oh * 3600 + om * 60);
      pos = mpos + 2;
    } else {
      return std::nullopt;
    }
  }
  if (pos != s.size()) return std::nullopt;

  const std::int64_t days = days_from_civil(year, static_cast<unsigned>(month),
                                            static_cast<unsigned>(day));
  return days * 86400 + hour * 3600 + minute * 60 + second - offset;
}

std::string format_timestamp_utc(std::int64_t timestamp_utc) {
  const std::int64_t days = floor_div(timestamp_utc, 86400);
  const std::int64_t sod = floor_mod(timestamp_utc, 86400);
  const CivilDate date = civil_from_days(days);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", date.year,
                date.month, date.day, static_cast<int>(sod / 3600),
                static_cast<int>((sod % 3600) / 60), static_cast<int>(sod % 60));
  return buf;
}

}  // namespace smellscape
