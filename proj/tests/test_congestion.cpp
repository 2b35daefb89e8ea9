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

#include <cmath>
#include <limits>

#include "doctest.h"
#include "fixtures.hpp"
#include "mobnet/congestion.hpp"
#include "mobnet/synth.hpp"
#include "oracles.hpp"

using namespace mobnet;

namespace {

SampleSeries series_of(std::vector<double> v) { return SampleSeries{100, std::move(v)}; }

WindowStats window(std::size_t index, double mean, double rad) {
  WindowStats w;
  w.window_index = index;
  w.mean_kbps = mean;
  w.rad = rad;
  return w;
}

std::vector<double> random_values(CounterRng& rng, std::size_t n) {
  std::vector<double> v(n);
  const double level = rng.uniform(10.0, 20000.0);
  const bool heavy = rng.below(4) == 0;
  for (double& x : v) {
    x = heavy ? level * rng.uniform(0.0, 5.0) : level * rng.unit_lognormal(0.3);
    if (rng.below(50) == 0) x = 0.0;
  }
  return v;
}

}  // namespace

TEST_CASE("filter_spikes examples") {
  const AnalysisConfig cfg;
  const auto spike = filter_spikes(series_of({10, 10, 100, 10, 10}), cfg);
  CHECK(spike.series.values == std::vector<double>{10, 10, 10, 10, 10});
  CHECK(spike.spikes_replaced == 1);
  CHECK(spike.replaced_indices == std::vector<std::size_t>{2});
  CHECK(spike.series.interval_ms == 100);

  const auto flat = filter_spikes(series_of({5, 5, 5, 5}), cfg);
  CHECK(flat.series.values == std::vector<double>{5, 5, 5, 5});
  CHECK(flat.spikes_replaced == 0);

  const auto zeros = filter_spikes(series_of(std::vector<double>(12, 0.0)), cfg);
  CHECK(zeros.series.values == std::vector<double>(12, 0.0));
  CHECK(zeros.spikes_replaced == 0);

  SUBCASE("dips are replaced too") {
    const auto dip = filter_spikes(series_of({10, 10, 1, 10, 10}), cfg);
    CHECK(dip.series.values[2] == 10);
    CHECK(dip.spikes_replaced == 1);
  }
}

TEST_CASE("filter_spikes is idempotent on random series") {
  const AnalysisConfig cfg;
  CounterRng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const auto values = random_values(rng, 2 + rng.below(120));
    const auto once = filter_spikes(series_of(values), cfg);
    const auto twice = filter_spikes(once.series, cfg);
    CHECK(twice.series.values == once.series.values);
    CHECK(twice.spikes_replaced == 0);
  }
}

TEST_CASE("window_stats examples") {
  AnalysisConfig two;
  two.window_size = 2;
  const auto a = window_stats(std::vector<double>{4, 6}, two);
  REQUIRE(a.size() == 1);
  CHECK(a[0].mean_kbps == 5.0);
  CHECK(a[0].rad == doctest::Approx(0.2).epsilon(1e-15));

  AnalysisConfig three;
  three.window_size = 3;
  const auto b = window_stats(std::vector<double>{7, 7, 7}, three);
  REQUIRE(b.size() == 1);
  CHECK(b[0].mean_kbps == 7.0);
  CHECK(b[0].rad == 0.0);

  const AnalysisConfig cfg;
  const auto c = window_stats(std::vector<double>(25, 3.0), cfg);
  CHECK(c.size() == 2);
  CHECK(c[1].window_index == 1);

  CHECK_THROWS_WITH_AS(window_stats(std::vector<double>(9, 3.0), cfg), "insufficient samples",
                       AnalysisError);
}

TEST_CASE("window statistics agree with brute-force oracle") {
  AnalysisConfig cfg;
  CounterRng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    cfg.window_size = 2 + static_cast<int>(rng.below(15));
    const auto values = random_values(rng, static_cast<std::size_t>(cfg.window_size) * (1 + rng.below(6)));
    const auto stats = window_stats(values, cfg);
    for (const auto& w : stats) {
      const std::span<const double> slice(values.data() + w.window_index * cfg.window_size,
                                          static_cast<std::size_t>(cfg.window_size));
      CHECK(oracle::close_rel(w.mean_kbps, oracle::mean(slice), 1e-9));
      CHECK(oracle::close_rel(w.rad, oracle::rad(slice), 1e-9));
      const double ub = rng.uniform(1.0, 30000.0);
      CHECK(oracle::close_rel(window_mape(slice, ub), oracle::mape(slice, ub), 1e-9));
    }
  }
}

TEST_CASE("select_upper_bound examples") {
  const AnalysisConfig cfg;
  const std::vector<WindowStats> three{window(0, 5, 0.30), window(1, 8, 0.05), window(2, 7.5, 0.02)};
  CHECK(select_upper_bound(three, cfg) == UpperBound{8, 1});

  const std::vector<WindowStats> single{window(0, 6, 0)};
  CHECK(select_upper_bound(single, cfg) == UpperBound{6, 0});

  const std::vector<WindowStats> unstable{window(0, 4, 0.5), window(1, 5, 0.5)};
  CHECK(select_upper_bound(unstable, cfg) == UpperBound{5, 1});

  SUBCASE("ties prefer lower rad then lower index") {
    const std::vector<WindowStats> tied{window(0, 8, 0.05), window(1, 8, 0.01), window(2, 8, 0.01)};
    CHECK(select_upper_bound(tied, cfg).window_index == 1);
  }
  SUBCASE("slow-start windows are never chosen") {
    std::vector<WindowStats> ws{window(0, 100, 0), window(1, 8, 0.05)};
    ws[0].excluded_slow_start = true;
    CHECK(select_upper_bound(ws, cfg) == UpperBound{8, 1});
    ws[1].excluded_slow_start = true;
    CHECK_THROWS_WITH_AS(select_upper_bound(ws, cfg), "no eligible window", AnalysisError);
  }
}

TEST_CASE("slow-start marking") {
  AnalysisConfig cfg;
  std::vector<WindowStats> ws{window(0, 10, 0), window(1, 30, 0), window(2, 100, 0), window(3, 20, 0)};
  mark_slow_start(ws, cfg);
  CHECK(ws[0].excluded_slow_start);
  CHECK(ws[1].excluded_slow_start);
  CHECK_FALSE(ws[2].excluded_slow_start);
  CHECK_FALSE(ws[3].excluded_slow_start);

  cfg.slow_start_min_excluded = 2;
  std::vector<WindowStats> forced{window(0, 100, 0), window(1, 100, 0), window(2, 1, 0)};
  mark_slow_start(forced, cfg);
  CHECK(forced[1].excluded_slow_start);
  CHECK_FALSE(forced[2].excluded_slow_start);
}

TEST_CASE("classify examples") {
  AnalysisConfig cfg;
  cfg.window_size = 2;
  // Slow-start window, then a flat window at 10, then [9, 8].
  const auto a = classify(series_of({4, 4, 10, 10, 9, 8}), cfg);
  CHECK(a.upper_bound_kbps == 10.0);
  CHECK(a.windows[0].excluded_slow_start);
  CHECK_FALSE(a.windows[0].mape_pct.has_value());
  CHECK(*a.windows[2].mape_pct == doctest::Approx(15.0).epsilon(1e-12));
  // The UB window contributes its own 0% to the overall mean.
  CHECK(a.overall_mape_pct == doctest::Approx(7.5).epsilon(1e-12));
  const double window_only = window_mape(std::vector<double>{9, 8}, 10.0);
  CHECK(window_only == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(pool_for(window_only, cfg) == CongestionPool::MEDIUM);

  const AnalysisConfig defaults;
  const auto flat = classify(series_of(std::vector<double>(40, 900.0)), defaults);
  CHECK(flat.overall_mape_pct == 0.0);
  CHECK(flat.pool == CongestionPool::LOW);
  CHECK(flat.upper_bound_window == 1);

  CHECK(pool_for(30.0, defaults) == CongestionPool::HIGH);

  CHECK_THROWS_WITH_AS(classify(series_of(std::vector<double>(15, 1.0)), defaults),
                       "insufficient samples", AnalysisError);
}

TEST_CASE("pool boundaries are closed as specified") {
  const AnalysisConfig cfg;
  const double eps = 1e-9;
  CHECK(pool_for(0.0, cfg) == CongestionPool::LOW);
  CHECK(pool_for(10.0, cfg) == CongestionPool::LOW);
  CHECK(pool_for(10.0 + eps, cfg) == CongestionPool::MEDIUM);
  CHECK(pool_for(25.0, cfg) == CongestionPool::MEDIUM);
  CHECK(pool_for(25.0 + eps, cfg) == CongestionPool::HIGH);

  // 4 windows at 12.5% plus the UB window at 0% average to exactly 10%.
  const auto low = classify(fixture::boundary_series(0.125, 4), cfg);
  CHECK(low.overall_mape_pct == 10.0);
  CHECK(low.pool == CongestionPool::LOW);
  const auto medium = classify(fixture::boundary_series(0.3125, 4), cfg);
  CHECK(medium.overall_mape_pct == 25.0);
  CHECK(medium.pool == CongestionPool::MEDIUM);

  auto nudged = fixture::boundary_series(0.125, 4);
  nudged.values.back() -= 1e-6;
  const auto above = classify(nudged, cfg);
  CHECK(above.overall_mape_pct > 10.0);
  CHECK(above.overall_mape_pct < 10.0 + 1e-6);
  CHECK(above.pool == CongestionPool::MEDIUM);
}

TEST_CASE("classify is scale invariant and deterministic") {
  const AnalysisConfig cfg;
  CounterRng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto target = static_cast<CongestionPool>(rng.below(3));
    const auto base = plant_pool(target, cfg, rng.uniform(100.0, 50000.0), rng.next_u64());
    const auto a = classify(base, cfg);
    CHECK(classify(base, cfg) == a);

    const double k = std::ldexp(1.0, static_cast<int>(rng.below(10)) - 5);
    SampleSeries scaled = base;
    for (double& x : scaled.values) x *= k;
    const auto b = classify(scaled, cfg);
    CHECK(b.upper_bound_kbps == doctest::Approx(a.upper_bound_kbps * k).epsilon(1e-12));
    CHECK(b.overall_mape_pct == doctest::Approx(a.overall_mape_pct).epsilon(1e-12));
    CHECK(b.pool == a.pool);
    CHECK(b.upper_bound_window == a.upper_bound_window);
  }
}

TEST_CASE("MAPE against a zero upper bound counts nonzero samples as full error") {
  CHECK(window_mape(std::vector<double>{0, 0, 5, 0}, 0.0) == 25.0);
  CHECK(window_mape(std::vector<double>{}, 10.0) == 0.0);
}

TEST_CASE("pool names round trip") {
  for (auto p : {CongestionPool::LOW, CongestionPool::MEDIUM, CongestionPool::HIGH}) {
    CHECK(parse_pool(to_string(p)) == p);
  }
  CHECK_FALSE(parse_pool("severe").has_value());
}
