/*
 * Copyright 2026 The mobnet Authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mobnet/calendar.hpp"

#include <cstdio>

namespace mobnet {

namespace {

constexpr std::int64_t kMsPerDay = 86'400'000;
constexpr std::int64_t kMsPerHour = 3'600'000;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t shifted(std::int64_t epoch_ms, int utc_offset_minutes) {
  return epoch_ms + static_cast<std::int64_t>(utc_offset_minutes) * 60'000;
}

// Days since 1970-01-01 to civil date (H. Hinnant's civil_from_days).
CivilDate civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400 + (m <= 2 ? 1 : 0);
  return {static_cast<int>(y), static_cast<int>(m), static_cast<int>(d)};
}

}  // namespace

CivilDate local_date(std::int64_t epoch_ms, int utc_offset_minutes) {
  return civil_from_days(floor_div(shifted(epoch_ms, utc_offset_minutes), kMsPerDay));
}

int local_hour(std::int64_t epoch_ms, int utc_offset_minutes) {
  const std::int64_t local = shifted(epoch_ms, utc_offset_minutes);
  const std::int64_t in_day = local - floor_div(local, kMsPerDay) * kMsPerDay;
  return static_cast<int>(in_day / kMsPerHour);
}

std::string quarter_label(std::int64_t epoch_ms, int utc_offset_minutes) {
  const CivilDate date = local_date(epoch_ms, utc_offset_minutes);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-Q%d", date.year, (date.month - 1) / 3 + 1);
  return buf;
}

std::string month_label(std::int64_t epoch_ms, int utc_offset_minutes) {
  const CivilDate date = local_date(epoch_ms, utc_offset_minutes);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d", date.year, date.month);
  return buf;
}

}  // namespace mobnet
