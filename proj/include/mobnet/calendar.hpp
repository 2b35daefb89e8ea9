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

#pragma once

#include <cstdint>
#include <string>

namespace mobnet {

/// Proleptic Gregorian civil date.
struct CivilDate {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31
};

/// Local civil date of a UTC epoch-millisecond timestamp shifted by
/// `utc_offset_minutes`.
CivilDate local_date(std::int64_t epoch_ms, int utc_offset_minutes);

/// Local hour of day, 0..23.
int local_hour(std::int64_t epoch_ms, int utc_offset_minutes);

/// "YYYY-Qn" label of the local calendar quarter.
std::string quarter_label(std::int64_t epoch_ms, int utc_offset_minutes);

/// "YYYY-MM" label of the local calendar month.
std::string month_label(std::int64_t epoch_ms, int utc_offset_minutes);

}  // namespace mobnet
