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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "mobnet/coverage.hpp"
#include "mobnet/synth.hpp"

using namespace mobnet;

namespace {

// One record per step, `step_ms` apart, on the given cells and technologies.
Session walk(const std::vector<std::pair<std::string, RadioTechnology>>& cells,
             std::int64_t step_ms = 10000) {
  Session s{"u", "OperatorA", {}};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto r = fixture::record("r" + std::to_string(i), "u",
                             fixture::kMidnightIst + static_cast<std::int64_t>(i) * step_ms,
                             1000.0 * static_cast<double>(i + 1));
    r.cell_id = cells[i].first;
    r.technology = cells[i].second;
    s.records.push_back(r);
  }
  return s;
}

HandoverEvent event(RadioTechnology from, RadioTechnology to, double from_kbps, double to_kbps) {
  HandoverEvent e;
  e.from_tech = from;
  e.to_tech = to;
  e.from_kbps = from_kbps;
  e.to_kbps = to_kbps;
  e.downgrade = is_downgrade(from, to);
  return e;
}

Session of_groups(std::vector<RadioTechnology> techs) {
  Session s{"u", "OperatorA", {}};
  for (std::size_t i = 0; i < techs.size(); ++i) {
    auto r = fixture::record("r" + std::to_string(i), "u", fixture::kMidnightIst + i, 1);
    r.technology = techs[i];
    s.records.push_back(r);
  }
  return s;
}

constexpr auto U = RadioTechnology::UMTS;
constexpr auto E = RadioTechnology::EDGE;
constexpr auto L = RadioTechnology::LTE;

}  // namespace

TEST_CASE("detect_handovers examples") {
  const AnalysisConfig cfg;
  const auto one = detect_handovers(walk({{"A", U}, {"A", U}, {"B", U}, {"B", U}}), cfg);
  REQUIRE(one.size() == 1);
  CHECK(one[0].from_cell == "A");
  CHECK(one[0].to_cell == "B");
  CHECK(one[0].from_record == "r1");
  CHECK(one[0].to_record == "r2");
  CHECK(one[0].at_ms == fixture::kMidnightIst + 20000);
  CHECK(one[0].gap_ms == 10000);
  CHECK(one[0].from_kbps == 2000);
  CHECK(one[0].to_kbps == 3000);

  CHECK(detect_handovers(walk({{"A", U}, {"B", U}}, 600000), cfg).empty());

  const auto two = detect_handovers(walk({{"A", U}, {"B", U}, {"A", U}}), cfg);
  REQUIRE(two.size() == 2);
  CHECK(two[1].from_cell == "B");
  CHECK(two[1].to_cell == "A");

  SUBCASE("gap equal to the limit still counts") {
    CHECK(detect_handovers(walk({{"A", U}, {"B", U}}, cfg.handover_max_gap_ms), cfg).size() == 1);
    CHECK(detect_handovers(walk({{"A", U}, {"B", U}}, cfg.handover_max_gap_ms + 1), cfg).empty());
  }
  SUBCASE("records without a cell are skipped without breaking adjacency") {
    auto s = walk({{"A", U}, {"X", U}, {"B", U}});
    s.records[1].cell_id.reset();
    const auto events = detect_handovers(s, cfg);
    REQUIRE(events.size() == 1);
    CHECK(events[0].from_record == "r0");
    CHECK(events[0].gap_ms == 20000);
  }
  SUBCASE("single constant cell gives nothing") {
    CHECK(detect_handovers(walk({{"A", U}, {"A", L}, {"A", E}}), cfg).empty());
  }
}

TEST_CASE("downgrade_events") {
  const std::vector<HandoverEvent> events{event(U, E, 1, 1), event(E, U, 1, 1), event(L, U, 1, 1),
                                          event(L, RadioTechnology::WLAN, 1, 1),
                                          event(RadioTechnology::HSPA, U, 1, 1)};
  const auto down = downgrade_events(events);
  REQUIRE(down.size() == 2);
  CHECK(down[0].to_tech == E);
  CHECK(down[1].from_tech == L);

  const AnalysisConfig cfg;
  const auto detected = detect_handovers(walk({{"A", U}, {"B", E}, {"C", U}}), cfg);
  REQUIRE(detected.size() == 2);
  CHECK(detected[0].downgrade);
  CHECK_FALSE(detected[1].downgrade);
}

TEST_CASE("downgrade flag is antisymmetric") {
  const RadioTechnology all[] = {RadioTechnology::GPRS, E, U, RadioTechnology::HSPA,
                                 RadioTechnology::HSPA_PLUS, L};
  for (auto a : all) {
    for (auto b : all) {
      if (group_of(a) == group_of(b)) {
        CHECK_FALSE(is_downgrade(a, b));
      } else {
        CHECK(is_downgrade(a, b) != is_downgrade(b, a));
      }
    }
  }
}

TEST_CASE("handover_impact") {
  const auto single = handover_impact({event(U, E, 4000, 400)});
  CHECK(single.count == 1);
  CHECK(*single.mean_throughput_ratio == doctest::Approx(0.1).epsilon(1e-15));

  const auto zero = handover_impact({event(U, E, 0, 400)});
  CHECK(zero.count == 1);
  CHECK_FALSE(zero.mean_throughput_ratio.has_value());
  CHECK(zero.throughput_ratio_excluded == 1);

  const auto pair = handover_impact({event(U, U, 1000, 500), event(U, U, 800, 800)});
  CHECK(*pair.mean_throughput_ratio == 0.75);
  CHECK(pair.throughput_ratio_events == 2);

  const auto empty = handover_impact({});
  CHECK(empty.count == 0);
  CHECK_FALSE(empty.mean_throughput_ratio.has_value());
  CHECK_FALSE(empty.mean_signal_ratio.has_value());

  SUBCASE("signal ratio on the linear scale") {
    auto e = event(U, E, 1000, 100);
    e.from_dbm = -70;
    e.to_dbm = -73;
    auto missing = event(U, E, 1000, 100);
    missing.from_dbm = -70;
    const auto s = handover_impact({e, missing});
    CHECK(*s.mean_signal_ratio == doctest::Approx(std::pow(10.0, -0.3)).epsilon(1e-12));
    CHECK(s.signal_ratio_events == 1);
    CHECK(s.signal_ratio_excluded == 1);
    CHECK(dbm_to_mw(-30) == doctest::Approx(1e-3).epsilon(1e-12));
  }
}

TEST_CASE("camping_stats") {
  std::vector<RadioTechnology> mix(5, L);
  mix.insert(mix.end(), 3, U);
  mix.insert(mix.end(), 2, E);
  const auto half = camping_stats(of_groups(mix), TechnologyGroup::G4);
  CHECK(half.total == 10);
  CHECK(half.on_lower == 5);
  CHECK(half.on_subscribed == 5);
  CHECK(half.fraction_lower == 0.5);

  CHECK(camping_stats(of_groups({L, L, L}), TechnologyGroup::G4).fraction_lower == 0.0);
  CHECK(camping_stats(of_groups({U, E}), TechnologyGroup::G3).fraction_lower == 0.5);

  const auto above = camping_stats(
      of_groups({L, U, RadioTechnology::WLAN, RadioTechnology::UNKNOWN}), TechnologyGroup::G3);
  CHECK(above.total == 2);
  CHECK(above.on_subscribed == 2);
  CHECK(above.on_lower == 0);

  CHECK_THROWS_AS(camping_stats(of_groups({E}), TechnologyGroup::G2), ConfigError);
}

TEST_CASE("camping fraction ignores record order; event count bounded by pairs") {
  const AnalysisConfig cfg;
  CounterRng rng(77);
  const RadioTechnology techs[] = {E, U, L, RadioTechnology::WLAN};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<std::string, RadioTechnology>> cells;
    const auto n = 1 + rng.below(40);
    for (std::size_t i = 0; i < n; ++i) {
      cells.emplace_back(std::string(1, static_cast<char>('A' + rng.below(3))), techs[rng.below(4)]);
    }
    auto s = walk(cells, static_cast<std::int64_t>(rng.below(200000)));
    CHECK(detect_handovers(s, cfg).size() <= n - 1);
    const auto before = camping_stats(s, TechnologyGroup::G4);
    std::reverse(s.records.begin(), s.records.end());
    const auto after = camping_stats(s, TechnologyGroup::G4);
    CHECK(before.on_lower == after.on_lower);
    CHECK(before.total == after.total);
    CHECK(before.on_lower + before.on_subscribed == before.total);
  }
}

TEST_CASE("HandoverIndex nearby window") {
  const AnalysisConfig cfg;
  const auto events = detect_handovers(walk({{"A", U}, {"B", U}}), cfg);
  const HandoverIndex index(events);
  const auto at = events[0].at_ms;
  CHECK(index.nearby("u", at, 120000));
  CHECK(index.nearby("u", at - 120000, 120000));
  CHECK(index.nearby("u", at + 120000, 120000));
  CHECK_FALSE(index.nearby("u", at + 120001, 120000));
  CHECK_FALSE(index.nearby("other", at, 120000));
}

TEST_CASE("compare_operators") {
  const AnalysisConfig cfg;
  auto a = walk({{"A", U}, {"B", E}});
  auto b = walk({{"C", L}, {"C", L}});
  b.subscriber_operator = "OperatorB";
  for (auto& r : b.records) {
    r.subscriber_operator = "OperatorB";
    r.download_kbps *= 2;
  }
  const auto events = detect_handovers(a, cfg);
  const auto rows = compare_operators({a, b}, events);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].subscriber_operator == "OperatorA");
  CHECK(rows[0].handovers == 1);
  CHECK(rows[0].downgrades == 1);
  CHECK(rows[0].records_2g == 1);
  CHECK(rows[0].records_3g == 1);
  CHECK(rows[1].records_4g == 2);
  CHECK(rows[1].relative_to_best == 1.0);
  CHECK(rows[0].relative_to_best == 0.5);
}
