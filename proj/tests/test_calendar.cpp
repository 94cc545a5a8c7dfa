#include <gtest/gtest.h>

#include "ringtrace/calendar.hpp"

using namespace ringtrace;

TEST(Calendar, UtcDateOfTimestamps) {
  EXPECT_EQ(utc_date(0), make_date(1970, 1, 1));
  EXPECT_EQ(utc_date(86399), make_date(1970, 1, 1));
  EXPECT_EQ(utc_date(86400), make_date(1970, 1, 2));
  EXPECT_EQ(utc_date(-1), make_date(1969, 12, 31));
  EXPECT_EQ(start_of_day(make_date(2021, 10, 1)), 1633046400);
}

TEST(Calendar, ParseAndFormatDates) {
  EXPECT_EQ(parse_date("2018-10-11"), make_date(2018, 10, 11));
  EXPECT_EQ(format_date(make_date(2023, 4, 10)), "2023-04-10");
  EXPECT_FALSE(parse_date("2023-02-30"));
  EXPECT_FALSE(parse_date("2023-4-10"));
  EXPECT_FALSE(parse_date("2023-04-10T00:00"));
  EXPECT_FALSE(parse_date(""));
}

TEST(Calendar, BucketKeys) {
  const Timestamp t = start_of_day(make_date(2021, 10, 31)) + 86399;
  EXPECT_EQ(bucket_key(t, Bucket::Month), "2021-10");
  EXPECT_EQ(bucket_key(t, Bucket::Day), "2021-10-31");
  EXPECT_EQ(bucket_key(t + 1, Bucket::Month), "2021-11");
  EXPECT_EQ(parse_bucket("month"), Bucket::Month);
  EXPECT_EQ(parse_bucket("day"), Bucket::Day);
  EXPECT_FALSE(parse_bucket("week"));
  EXPECT_EQ(to_string(Bucket::Month), "month");
}

TEST(Calendar, MonthKeysSortChronologically) {
  EXPECT_LT(bucket_key(start_of_day(make_date(2021, 9, 30)), Bucket::Month),
            bucket_key(start_of_day(make_date(2021, 10, 1)), Bucket::Month));
  EXPECT_LT(bucket_key(start_of_day(make_date(2021, 12, 31)), Bucket::Month),
            bucket_key(start_of_day(make_date(2022, 1, 1)), Bucket::Month));
}
