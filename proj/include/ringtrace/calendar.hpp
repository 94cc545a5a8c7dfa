#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

// UTC calendar helpers. Timestamps throughout are UTC seconds since epoch.
namespace ringtrace {

using Timestamp = std::int64_t;
using Date = std::chrono::sys_days;

constexpr Date make_date(int y, unsigned m, unsigned d) {
  return Date{std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m},
                                          std::chrono::day{d}}};
}

Date utc_date(Timestamp ts) noexcept;
Timestamp start_of_day(Date d) noexcept;

// Accepts YYYY-MM-DD only.
std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date d);

enum class Bucket { Day, Month };

std::optional<Bucket> parse_bucket(std::string_view text);
std::string_view to_string(Bucket b) noexcept;

// "YYYY-MM" for Month, "YYYY-MM-DD" for Day. Keys sort chronologically.
std::string bucket_key(Timestamp ts, Bucket b);

}  // namespace ringtrace
