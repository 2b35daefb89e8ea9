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

#include "doctest.h"
#include "fixtures.hpp"
#include "mobnet/calendar.hpp"
#include "mobnet/model.hpp"

using namespace mobnet;

TEST_CASE("group_of follows the fixed generation mapping") {
  CHECK(group_of(RadioTechnology::EDGE) == TechnologyGroup::G2);
  CHECK(group_of(RadioTechnology::GPRS) == TechnologyGroup::G2);
  CHECK(group_of(RadioTechnology::UMTS) == TechnologyGroup::G3);
  CHECK(group_of(RadioTechnology::HSPA) == TechnologyGroup::G3);
  CHECK(group_of(RadioTechnology::HSPA_PLUS) == TechnologyGroup::G3);
  CHECK(group_of(RadioTechnology::LTE) == TechnologyGroup::G4);
  CHECK(group_of(RadioTechnology::WLAN) == TechnologyGroup::WLAN);
  CHECK_FALSE(group_of(RadioTechnology::UNKNOWN).has_value());
}

TEST_CASE("group_of is total over known technologies") {
  for (auto t : {RadioTechnology::GPRS, RadioTechnology::EDGE, RadioTechnology::UMTS,
                 RadioTechnology::HSPA, RadioTechnology::HSPA_PLUS, RadioTechnology::LTE,
                 RadioTechnology::WLAN}) {
    CHECK(group_of(t).has_value());
    CHECK(parse_technology(to_string(t)) == t);
  }
}

TEST_CASE("downgrade ordering") {
  CHECK(is_downgrade(RadioTechnology::UMTS, RadioTechnology::EDGE));
  CHECK(is_downgrade(RadioTechnology::LTE, RadioTechnology::UMTS));
  CHECK_FALSE(is_downgrade(RadioTechnology::EDGE, RadioTechnology::UMTS));
  CHECK_FALSE(is_downgrade(RadioTechnology::HSPA, RadioTechnology::UMTS));
  CHECK_FALSE(is_downgrade(RadioTechnology::LTE, RadioTechnology::WLAN));
  CHECK_FALSE(is_downgrade(RadioTechnology::LTE, RadioTechnology::UNKNOWN));
}

TEST_CASE("technology parsing accepts aliases") {
  CHECK(parse_technology("HSPA+") == RadioTechnology::HSPA_PLUS);
  CHECK(parse_technology("lte") == RadioTechnology::LTE);
  CHECK(parse_technology("wifi") == RadioTechnology::WLAN);
  CHECK_FALSE(parse_technology("5G-NR").has_value());
  CHECK(parse_group("4g") == TechnologyGroup::G4);
}

TEST_CASE("record validation") {
  auto r = fixture::record("r1", "u1", fixture::kMidnightIst, 1000);
  CHECK_FALSE(validate(r).error.has_value());

  SUBCASE("negative throughput") {
    r.download_kbps = -5;
    CHECK(validate(r).error == "negative throughput");
  }
  SUBCASE("non-positive timestamp") {
    r.timestamp = 0;
    CHECK(validate(r).error.has_value());
  }
  SUBCASE("short sample series") {
    r.samples = SampleSeries{100, {1000}};
    CHECK(validate(r).error == "sample series shorter than 2");
  }
  SUBCASE("zero interval") {
    r.samples = SampleSeries{0, {1000, 1000}};
    CHECK(validate(r).error == "non-positive sample interval");
  }
  SUBCASE("headline must match sample mean within 1%") {
    r.samples = SampleSeries{100, {990, 1010}};
    CHECK_FALSE(validate(r).error.has_value());
    r.download_kbps = 1009.9;
    CHECK_FALSE(validate(r).error.has_value());
    r.download_kbps = 1011;
    CHECK(validate(r).error.has_value());
  }
  SUBCASE("signal outside physical range only warns") {
    r.signal_dbm = -150;
    const auto check = validate(r);
    CHECK_FALSE(check.error.has_value());
    CHECK(check.warnings.size() == 1);
  }
}

TEST_CASE("analysis config validation") {
  AnalysisConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.mape_low_max = 30;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = {};
  cfg.attribution_alpha = 0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = {};
  cfg.window_size = 1;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("calendar bucketing applies the UTC offset") {
  // 2015-06-01 00:00 IST is 2015-05-31 18:30 UTC.
  CHECK(local_hour(fixture::kMidnightIst, 330) == 0);
  CHECK(local_hour(fixture::kMidnightIst, 0) == 18);
  CHECK(month_label(fixture::kMidnightIst, 330) == "2015-06");
  CHECK(month_label(fixture::kMidnightIst, 0) == "2015-05");
  CHECK(quarter_label(fixture::kMidnightIst, 330) == "2015-Q2");
  CHECK(quarter_label(1420070400000, 0) == "2015-Q1");  // 2015-01-01 UTC
  CHECK(local_hour(1, -60) == 23);
  const auto d = local_date(951782400000, 0);  // 2000-02-29
  CHECK(d.year == 2000);
  CHECK(d.month == 2);
  CHECK(d.day == 29);
}
