// Copyright 2026 the tdacs authors.
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

#include "common/clock.hpp"

#include <chrono>
#include <cstdio>

namespace tdacs::clock {

namespace {

constexpr int64_t kDaySeconds = 86400;

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  int64_t era = (y >= 0 ? y : y - 399) / 400;
  int yoe = static_cast<int>(y - era * 400);
  int doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  int doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

void civil_from_days(int64_t z, int& y, int& m, int& d) {
  z += 719468;
  int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  int doe = static_cast<int>(z - era * 146097);
  int yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  int yy = static_cast<int>(yoe + era * 400);
  int doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  int mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = yy + (m <= 2);
}

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

int64_t floor_mod(int64_t a, int64_t b) { return a - floor_div(a, b) * b; }

bool valid_date(int y, int m, int d) {
  if (m < 1 || m > 12 || d < 1) return false;
  static const int md[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  int max = md[m - 1];
  bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  if (m == 2 && leap) max = 29;
  return d <= max;
}

}  // namespace

int64_t now() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::optional<int64_t> parse_timestamp(std::string_view text) {
  std::string buf(text);
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  int n = std::sscanf(buf.c_str(), "%d-%d-%d %d:%d:%d", &y, &mo, &d, &h, &mi,
                      &s);
  if (n != 3 && n != 5 && n != 6) {
    return std::nullopt;
  }
  if (!valid_date(y, mo, d) || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 ||
      s > 59) {
    return std::nullopt;
  }
  return civil_to_epoch(y, mo, d, h, mi, s);
}

std::string format_timestamp(int64_t ts) {
  int y, mo, d, h, mi, s;
  epoch_to_civil(ts, y, mo, d, h, mi, s);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %02d:%02d:%02d", y, mo, d, h,
                mi, s);
  return buf;
}

std::optional<int> parse_hhmm(std::string_view text) {
  std::string buf(text);
  int h = 0, m = 0;
  if (std::sscanf(buf.c_str(), "%d:%d", &h, &m) != 2) {
    return std::nullopt;
  }
  // 24:00 is accepted as end-of-day.
  if (h < 0 || h > 24 || m < 0 || m > 59 || (h == 24 && m != 0)) {
    return std::nullopt;
  }
  return h * 60 + m;
}

int minutes_of_day(int64_t ts, int tz_offset_min) {
  int64_t local = ts + static_cast<int64_t>(tz_offset_min) * 60;
  return static_cast<int>(floor_mod(local, kDaySeconds) / 60);
}

int64_t civil_to_epoch(int year, int month, int day, int hour, int minute,
                       int second) {
  return days_from_civil(year, month, day) * kDaySeconds + hour * 3600 +
         minute * 60 + second;
}

void epoch_to_civil(int64_t ts, int& year, int& month, int& day, int& hour,
                    int& minute, int& second) {
  int64_t days = floor_div(ts, kDaySeconds);
  int64_t rem = floor_mod(ts, kDaySeconds);
  civil_from_days(days, year, month, day);
  hour = static_cast<int>(rem / 3600);
  minute = static_cast<int>((rem % 3600) / 60);
  second = static_cast<int>(rem % 60);
}

int weekday(int64_t ts) {
  int64_t days = floor_div(ts, kDaySeconds);
  // 1970-01-01 was a Thursday.
  return static_cast<int>(floor_mod(days + 3, 7));
}

std::string iso_week_label(int64_t ts) {
  // The ISO week-year is the calendar year of the week's Thursday.
  int64_t days = floor_div(ts, kDaySeconds);
  int64_t thursday = days - floor_mod(days + 3, 7) + 3;
  int y, m, d;
  civil_from_days(thursday, y, m, d);
  int64_t jan1 = days_from_civil(y, 1, 1);
  int week = static_cast<int>((thursday - jan1) / 7) + 1;
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-W%02d", y, week);
  return buf;
}

std::optional<Granularity> parse_granularity(std::string_view text) {
  if (text == "day") return Granularity::day;
  if (text == "week") return Granularity::week;
  if (text == "month") return Granularity::month;
  return std::nullopt;
}

const char* granularity_name(Granularity g) {
  switch (g) {
    case Granularity::day:
      return "day";
    case Granularity::week:
      return "week";
    case Granularity::month:
      return "month";
  }
  return "week";
}

Period period_for(Granularity g, int64_t ts) {
  // Shift a boundary instant into the period ending there.
  int64_t probe = ts - 1;
  int64_t days = floor_div(probe, kDaySeconds);
  Period p;
  int y, m, d;
  switch (g) {
    case Granularity::day: {
      p.start = days * kDaySeconds;
      p.end = p.start + kDaySeconds;
      civil_from_days(days, y, m, d);
      char buf[16];
      std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
      p.label = buf;
      break;
    }
    case Granularity::week: {
      int64_t monday = days - floor_mod(days + 3, 7);
      p.start = monday * kDaySeconds;
      p.end = p.start + 7 * kDaySeconds;
      p.label = iso_week_label(p.start);
      break;
    }
    case Granularity::month: {
      civil_from_days(days, y, m, d);
      p.start = days_from_civil(y, m, 1) * kDaySeconds;
      int ny = m == 12 ? y + 1 : y;
      int nm = m == 12 ? 1 : m + 1;
      p.end = days_from_civil(ny, nm, 1) * kDaySeconds;
      char buf[16];
      std::snprintf(buf, sizeof(buf), "%04d-%02d", y, m);
      p.label = buf;
      break;
    }
  }
  return p;
}

}  // namespace tdacs::clock
