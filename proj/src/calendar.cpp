#include "ringtrace/calendar.hpp"

#include <charconv>
#include <cstdio>

namespace ringtrace {

using namespace std::chrono;

Date utc_date(Timestamp ts) noexcept {
  return floor<days>(sys_seconds{seconds{ts}});
}

Timestamp start_of_day(Date d) noexcept {
  return duration_cast<seconds>(d.time_since_epoch()).count();
}

namespace {

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) ||
      !parse_int(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd};
}

std::string format_date(Date d) {
  year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::optional<Bucket> parse_bucket(std::string_view text) {
  if (text == "month") return Bucket::Month;
  if (text == "day") return Bucket::Day;
  return std::nullopt;
}

std::string_view to_string(Bucket b) noexcept {
  return b == Bucket::Month ? "month" : "day";
}

std::string bucket_key(Timestamp ts, Bucket b) {
  std::string key = format_date(utc_date(ts));
  if (b == Bucket::Month) key.resize(7);
  return key;
}

}  // namespace ringtrace
