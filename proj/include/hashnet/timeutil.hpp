#pragma once

#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace hashnet {

using Timestamp = std::chrono::sys_seconds;

namespace detail {

inline bool read_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  for (std::size_t i = pos; i < pos + len; ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  auto r = std::from_chars(s.data() + pos, s.data() + pos + len, out);
  return r.ec == std::errc{};
}

inline std::optional<Timestamp> make_time(int y, int mo, int d, int h, int mi, int sec) {
  using namespace std::chrono;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h < 0 || h > 23 || mi < 0 || mi > 59 || sec < 0 || sec > 60) return std::nullopt;
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec};
}

// "Wed Oct 10 20:19:24 +0000 2018", the legacy Twitter API format.
inline std::optional<Timestamp> parse_twitter_time(std::string_view s) {
  static constexpr std::array<std::string_view, 12> kMonths = {
      "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  if (s.size() != 30) return std::nullopt;
  int mo = 0;
  for (std::size_t i = 0; i < kMonths.size(); ++i)
    if (s.substr(4, 3) == kMonths[i]) mo = static_cast<int>(i) + 1;
  int d, h, mi, sec, oh, om, y;
  if (mo == 0 || !read_int(s, 8, 2, d) || !read_int(s, 11, 2, h) || !read_int(s, 14, 2, mi) ||
      !read_int(s, 17, 2, sec) || !read_int(s, 21, 2, oh) || !read_int(s, 23, 2, om) ||
      !read_int(s, 26, 4, y))
    return std::nullopt;
  if (s[20] != '+' && s[20] != '-') return std::nullopt;
  auto t = make_time(y, mo, d, h, mi, sec);
  if (!t) return std::nullopt;
  const auto offset = std::chrono::hours{oh} + std::chrono::minutes{om};
  return s[20] == '+' ? *t - offset : *t + offset;
}

}  // namespace detail

// Accepts ISO-8601 "YYYY-MM-DD", "YYYY-MM-DDTHH:MM[:SS[.fff]][Z|+HH:MM|-HH:MM]"
// ('T' or ' ' separator) and the legacy Twitter format. Fractional seconds are
// truncated. Returns nullopt on anything else.
inline std::optional<Timestamp> parse_timestamp(std::string_view s) {
  using detail::read_int;
  if (s.size() == 30 && s[3] == ' ') return detail::parse_twitter_time(s);
  int y, mo, d, h = 0, mi = 0, sec = 0;
  if (!read_int(s, 0, 4, y) || s.size() < 10 || s[4] != '-' || !read_int(s, 5, 2, mo) ||
      s[7] != '-' || !read_int(s, 8, 2, d))
    return std::nullopt;
  std::size_t pos = 10;
  if (pos == s.size()) return detail::make_time(y, mo, d, 0, 0, 0);
  if (s[pos] != 'T' && s[pos] != ' ') return std::nullopt;
  if (!read_int(s, pos + 1, 2, h) || pos + 3 >= s.size() || s[pos + 3] != ':' ||
      !read_int(s, pos + 4, 2, mi))
    return std::nullopt;
  pos += 6;
  if (pos < s.size() && s[pos] == ':') {
    if (!read_int(s, pos + 1, 2, sec)) return std::nullopt;
    pos += 3;
    if (pos < s.size() && s[pos] == '.') {
      ++pos;
      const std::size_t digits = pos;
      while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
      if (pos == digits) return std::nullopt;
    }
  }
  auto t = detail::make_time(y, mo, d, h, mi, sec);
  if (!t) return std::nullopt;
  if (pos == s.size()) return t;
  if (s[pos] == 'Z' && pos + 1 == s.size()) return t;
  if (s[pos] == '+' || s[pos] == '-') {
    int oh, om;
    if (!read_int(s, pos + 1, 2, oh)) return std::nullopt;
    std::size_t mpos = pos + 3;
    if (mpos < s.size() && s[mpos] == ':') ++mpos;
    if (!read_int(s, mpos, 2, om) || mpos + 2 != s.size() || oh > 23 || om > 59)
      return std::nullopt;
    const auto offset = std::chrono::hours{oh} + std::chrono::minutes{om};
    return s[pos] == '+' ? *t - offset : *t + offset;
  }
  return std::nullopt;
}

// Canonical UTC form "YYYY-MM-DDTHH:MM:SSZ".
inline std::string format_timestamp(Timestamp t) {
  using namespace std::chrono;
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{t - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

inline int utc_year(Timestamp t) {
  using namespace std::chrono;
  return static_cast<int>(year_month_day{floor<days>(t)}.year());
}

}  // namespace hashnet
