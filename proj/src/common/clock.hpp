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

#ifndef TDACS_COMMON_CLOCK_HPP
#define TDACS_COMMON_CLOCK_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tdacs::clock {

// Timestamps are epoch seconds.  Wall-clock strings ("YYYY-MM-DD HH:MM[:SS]")
// are converted with a fixed configurable offset from UTC; there is no DST
// handling.

int64_t now();

// Accepts "YYYY-MM-DD HH:MM:SS", "YYYY-MM-DD HH:MM" and "YYYY-MM-DD".
std::optional<int64_t> parse_timestamp(std::string_view text);
std::string format_timestamp(int64_t ts);

// "HH:MM" -> minutes since midnight.
std::optional<int> parse_hhmm(std::string_view text);

// Minute-of-day of a timestamp after applying the zone offset.
int minutes_of_day(int64_t ts, int tz_offset_min);

int64_t civil_to_epoch(int year, int month, int day, int hour = 0,
                       int minute = 0, int second = 0);
void epoch_to_civil(int64_t ts, int& year, int& month, int& day, int& hour,
                    int& minute, int& second);

// 0 = Monday ... 6 = Sunday.
int weekday(int64_t ts);

// ISO-8601 week of the day containing ts, e.g. "2020-W01".
std::string iso_week_label(int64_t ts);

enum class Granularity { day, week, month };

std::optional<Granularity> parse_granularity(std::string_view text);
const char* granularity_name(Granularity g);

struct Period {
  int64_t start = 0;  // exclusive
  int64_t end = 0;    // inclusive
  std::string label;

  bool contains(int64_t ts) const { return ts > start && ts <= end; }
};

// The calendar period containing ts.  A timestamp exactly on a boundary
// belongs to the period that ends there, matching the (start, end]
// convention.
Period period_for(Granularity g, int64_t ts);

}  // namespace tdacs::clock

#endif  // TDACS_COMMON_CLOCK_HPP
