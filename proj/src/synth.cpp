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

#include "mobnet/synth.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

#include "mobnet/calendar.hpp"

namespace mobnet {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kStreamSalt = 0x632BE59BD9B4E019ULL;
constexpr std::int64_t kMsPerHour = 3'600'000;

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

double mean_of(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

// Exact per-class counts by largest remainder, in LOW, MEDIUM, HIGH order.
std::vector<CongestionPool> pool_quota(const PoolMix& mix, std::size_t n) {
  const std::array<double, 3> fractions{mix.low, mix.medium, mix.high};
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> remainders{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double exact = fractions[i] * static_cast<double>(n);
    counts[i] = static_cast<std::size_t>(std::floor(exact));
    remainders[i] = exact - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  while (assigned < n) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < 3; ++i) {
      if (remainders[i] > remainders[best]) best = i;
    }
    ++counts[best];
    remainders[best] = -1.0;
    ++assigned;
  }
  std::vector<CongestionPool> pools;
  pools.reserve(n);
  for (std::size_t i = 0; i < 3; ++i) {
    pools.insert(pools.end(), counts[i], static_cast<CongestionPool>(i));
  }
  return pools;
}

struct Slot {
  std::int64_t timestamp = 0;
  double level_kbps = 0.0;
  std::string cell_id;
  RadioTechnology technology = RadioTechnology::UNKNOWN;
  double signal_center_dbm = 0.0;
  bool commute = false;
};

}  // namespace

// ------------------------------------------------------------------ RNG

std::uint64_t CounterRng::mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double CounterRng::normal() {
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double CounterRng::unit_lognormal(double cv) {
  if (cv <= 0.0) return 1.0;
  const double sigma2 = std::log1p(cv * cv);
  return std::exp(-0.5 * sigma2 + std::sqrt(sigma2) * normal());
}

std::uint64_t CounterRng::below(std::uint64_t n) {
  return n == 0 ? 0 : static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
}

CounterRng CounterRng::fork(std::uint64_t stream) const {
  return CounterRng(mix64(key_ ^ mix64(stream + kStreamSalt)));
}

// --------------------------------------------------------------- config

std::string to_string(Scenario scenario) {
  return scenario == Scenario::STATIONARY_24H ? "stationary24h" : "commute";
}

std::optional<Scenario> parse_scenario(std::string_view text) {
  if (text == "stationary24h" || text == "STATIONARY_24H") return Scenario::STATIONARY_24H;
  if (text == "commute" || text == "COMMUTE") return Scenario::COMMUTE;
  return std::nullopt;
}

void validate(const ScenarioConfig& c) {
  if (!(c.diurnal_dip >= 0.0 && c.diurnal_dip < 1.0)) throw ConfigError("dip must be in [0,1)");
  if (!(c.base_capacity_kbps > 0.0)) throw ConfigError("base_capacity_kbps must be > 0");
  if (!(c.spike_rate >= 0.0 && c.spike_rate <= 1.0)) throw ConfigError("spike_rate must be in [0,1]");
  if (!(c.noise_cv >= 0.0)) throw ConfigError("noise_cv must be >= 0");
  if (c.records_per_hour < 1 || c.records_per_hour > 3600) {
    throw ConfigError("records_per_hour must be in [1,3600]");
  }
  if (c.samples_per_record < 2) throw ConfigError("samples_per_record must be >= 2");
  if (c.sample_interval_ms <= 0) throw ConfigError("sample_interval_ms must be > 0");
  if (c.busy_hours.first < 0 || c.busy_hours.last > 23 || c.busy_hours.first > c.busy_hours.last) {
    throw ConfigError("busy_hours must be an inclusive range within 0..23");
  }
  if (c.utc_offset_minutes < -14 * 60 || c.utc_offset_minutes > 14 * 60) {
    throw ConfigError("utc_offset_minutes must be within +-14h");
  }
  if (c.start_ms <= 0) throw ConfigError("start_ms must be > 0");
  if (!(c.signal_min_dbm <= c.signal_max_dbm)) throw ConfigError("signal range is empty");
  if (c.user_id.empty()) throw ConfigError("user_id must not be empty");
  if (c.planted_pool_mix) {
    const PoolMix& m = *c.planted_pool_mix;
    for (double f : {m.low, m.medium, m.high}) {
      if (!(f >= 0.0 && f <= 1.0)) throw ConfigError("pool mix fractions must be in [0,1]");
    }
    if (std::abs(m.low + m.medium + m.high - 1.0) > 1e-9) {
      throw ConfigError("pool mix fractions must sum to 1");
    }
  }
  if (c.scenario == Scenario::COMMUTE) {
    if (c.cells.size() < 2) throw ConfigError("commute needs at least 2 cells");
    if (c.records_per_cell < 1) throw ConfigError("records_per_cell must be >= 1");
    if (c.injected_gap_ms < 0) throw ConfigError("injected_gap_ms must be >= 0");
    for (const CellSpec& cell : c.cells) {
      if (cell.cell_id.empty()) throw ConfigError("cell_id must not be empty");
      if (!(cell.capacity_kbps > 0.0)) throw ConfigError("cell capacity must be > 0");
      if (cell.technology == RadioTechnology::UNKNOWN) {
        throw ConfigError("cell technology must be known");
      }
    }
    for (std::size_t b : c.gapped_boundaries) {
      if (b + 1 >= c.cells.size()) throw ConfigError("gapped boundary out of range");
    }
  }
}

ScenarioConfig default_scenario(Scenario scenario) {
  ScenarioConfig c;
  c.scenario = scenario;
  if (scenario == Scenario::COMMUTE) {
    c.records_per_hour = 120;
    c.cells = {{"cell-A", RadioTechnology::UMTS, 4000.0, -70.0},
               {"cell-B", RadioTechnology::EDGE, 400.0, -73.0},
               {"cell-C", RadioTechnology::UMTS, 4000.0, -70.0},
               {"cell-D", RadioTechnology::LTE, 12000.0, -65.0}};
  }
  return c;
}

ordered_json to_json(const ScenarioConfig& c) {
  ordered_json j;
  j["seed"] = c.seed;
  j["scenario"] = to_string(c.scenario);
  j["base_capacity_kbps"] = c.base_capacity_kbps;
  j["diurnal_dip"] = c.diurnal_dip;
  j["busy_hours"] = {c.busy_hours.first, c.busy_hours.last};
  j["cells"] = ordered_json::array();
  for (const CellSpec& cell : c.cells) {
    j["cells"].push_back({{"cell_id", cell.cell_id},
                          {"technology", std::string(to_string(cell.technology))},
                          {"capacity_kbps", cell.capacity_kbps},
                          {"signal_dbm", cell.signal_dbm}});
  }
  j["records_per_hour"] = c.records_per_hour;
  j["sample_interval_ms"] = c.sample_interval_ms;
  j["samples_per_record"] = c.samples_per_record;
  j["spike_rate"] = c.spike_rate;
  j["noise_cv"] = c.noise_cv;
  if (c.planted_pool_mix) {
    j["planted_pool_mix"] = {{"low", c.planted_pool_mix->low},
                             {"medium", c.planted_pool_mix->medium},
                             {"high", c.planted_pool_mix->high}};
  } else {
    j["planted_pool_mix"] = nullptr;
  }
  j["start_ms"] = c.start_ms;
  j["utc_offset_minutes"] = c.utc_offset_minutes;
  j["records_per_cell"] = c.records_per_cell;
  j["gapped_boundaries"] = c.gapped_boundaries;
  j["injected_gap_ms"] = c.injected_gap_ms;
  j["user_id"] = c.user_id;
  j["network_operator"] = c.network_operator;
  j["subscriber_operator"] = c.subscriber_operator;
  j["region_tag"] = c.region_tag ? ordered_json(*c.region_tag) : ordered_json(nullptr);
  j["stationary_cell_id"] = c.stationary_cell_id;
  j["stationary_technology"] = std::string(to_string(c.stationary_technology));
  j["signal_min_dbm"] = c.signal_min_dbm;
  j["signal_max_dbm"] = c.signal_max_dbm;
  j["manufacturer"] = c.manufacturer;
  j["model"] = c.model;
  j["os_name"] = c.os_name;
  j["os_version"] = c.os_version;
  j["plan_id"] = c.plan_id ? ordered_json(*c.plan_id) : ordered_json(nullptr);
  return j;
}

ScenarioConfig scenario_from_json(const json& j, ScenarioConfig c) {
  if (!j.is_object()) throw ConfigError("scenario config must be a JSON object");
  auto tech = [](const json& v) {
    const auto t = parse_technology(v.get<std::string>());
    if (!t) throw ConfigError("unknown technology '" + v.get<std::string>() + "'");
    return *t;
  };
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "scenario") {
        const auto s = parse_scenario(v.get<std::string>());
        if (!s) throw ConfigError("unknown scenario '" + v.get<std::string>() + "'");
        c.scenario = *s;
      }
      else if (key == "base_capacity_kbps") c.base_capacity_kbps = v.get<double>();
      else if (key == "diurnal_dip") c.diurnal_dip = v.get<double>();
      else if (key == "busy_hours") {
        if (!v.is_array() || v.size() != 2) throw ConfigError("busy_hours must be [first, last]");
        c.busy_hours = {v[0].get<int>(), v[1].get<int>()};
      }
      else if (key == "cells") {
        c.cells.clear();
        for (const auto& cell : v) {
          CellSpec spec;
          spec.cell_id = cell.at("cell_id").get<std::string>();
          spec.technology = tech(cell.at("technology"));
          spec.capacity_kbps = cell.at("capacity_kbps").get<double>();
          if (cell.contains("signal_dbm")) spec.signal_dbm = cell.at("signal_dbm").get<double>();
          c.cells.push_back(std::move(spec));
        }
      }
      else if (key == "records_per_hour") c.records_per_hour = v.get<int>();
      else if (key == "sample_interval_ms") c.sample_interval_ms = v.get<std::int64_t>();
      else if (key == "samples_per_record") c.samples_per_record = v.get<int>();
      else if (key == "spike_rate") c.spike_rate = v.get<double>();
      else if (key == "noise_cv") c.noise_cv = v.get<double>();
      else if (key == "planted_pool_mix") {
        if (v.is_null()) {
          c.planted_pool_mix.reset();
        } else {
          c.planted_pool_mix = PoolMix{v.at("low").get<double>(), v.at("medium").get<double>(),
                                       v.at("high").get<double>()};
        }
      }
      else if (key == "start_ms") c.start_ms = v.get<std::int64_t>();
      else if (key == "utc_offset_minutes") c.utc_offset_minutes = v.get<int>();
      else if (key == "records_per_cell") c.records_per_cell = v.get<int>();
      else if (key == "gapped_boundaries") c.gapped_boundaries = v.get<std::vector<std::size_t>>();
      else if (key == "injected_gap_ms") c.injected_gap_ms = v.get<std::int64_t>();
      else if (key == "user_id") c.user_id = v.get<std::string>();
      else if (key == "network_operator") c.network_operator = v.get<std::string>();
      else if (key == "subscriber_operator") c.subscriber_operator = v.get<std::string>();
      else if (key == "region_tag") {
        c.region_tag = v.is_null() ? std::nullopt : std::optional<std::string>(v.get<std::string>());
      }
      else if (key == "stationary_cell_id") c.stationary_cell_id = v.get<std::string>();
      else if (key == "stationary_technology") c.stationary_technology = tech(v);
      else if (key == "signal_min_dbm") c.signal_min_dbm = v.get<double>();
      else if (key == "signal_max_dbm") c.signal_max_dbm = v.get<double>();
      else if (key == "manufacturer") c.manufacturer = v.get<std::string>();
      else if (key == "model") c.model = v.get<std::string>();
      else if (key == "os_name") c.os_name = v.get<std::string>();
      else if (key == "os_version") c.os_version = v.get<std::string>();
      else if (key == "plan_id") {
        c.plan_id = v.is_null() ? std::nullopt : std::optional<std::string>(v.get<std::string>());
      }
      else throw ConfigError("unknown scenario config field '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario config: ") + e.what());
  }
  return c;
}

std::string run_id_for(const ScenarioConfig& config) {
  return "synth-" + hex16(fnv1a64(to_json(config).dump()));
}

ordered_json to_json(const GroundTruth& t) {
  auto opt = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  ordered_json j;
  j["run_id"] = t.run_id;
  j["scenario"] = to_string(t.scenario);
  j["seed"] = t.seed;
  j["diurnal_dip"] = t.diurnal_dip;
  j["true_busy_mean_kbps"] = opt(t.true_busy_mean_kbps);
  j["true_offpeak_mean_kbps"] = opt(t.true_offpeak_mean_kbps);
  j["hourly_true_means"] = ordered_json::array();
  for (const auto& m : t.hourly_true_means) j["hourly_true_means"].push_back(opt(m));
  j["handovers"] = ordered_json::array();
  for (const PlantedHandover& h : t.handovers) {
    j["handovers"].push_back({{"at_ms", h.at_ms},
                              {"from_record", h.from_record},
                              {"to_record", h.to_record},
                              {"from_cell", h.from_cell},
                              {"to_cell", h.to_cell},
                              {"from_tech", std::string(to_string(h.from_tech))},
                              {"to_tech", std::string(to_string(h.to_tech))},
                              {"downgrade", h.downgrade},
                              {"gap_injected", h.gap_injected}});
  }
  j["records"] = ordered_json::array();
  for (const PlantedRecord& r : t.records) {
    j["records"].push_back(
        {{"record_id", r.record_id},
         {"cell_id", r.cell_id},
         {"local_hour", r.local_hour},
         {"true_mean_kbps", r.true_mean_kbps},
         {"planted_pool",
          r.planted_pool ? ordered_json(std::string(to_string(*r.planted_pool))) : ordered_json(nullptr)},
         {"spike_indices", r.spike_indices}});
  }
  return j;
}

// ------------------------------------------------------------ series

double planted_mape_pct(CongestionPool target) {
  switch (target) {
    case CongestionPool::LOW:
      return 5.0;
    case CongestionPool::MEDIUM:
      return 15.0;
    case CongestionPool::HIGH:
      return 40.0;
  }
  return 40.0;
}

SampleSeries plant_pool(CongestionPool target, const AnalysisConfig& cfg, double base_kbps,
                        std::uint64_t seed) {
  validate(cfg);
  if (!(base_kbps > 0.0)) throw ConfigError("base_kbps must be > 0");

  CounterRng rng(seed);
  const auto size = static_cast<std::size_t>(cfg.window_size);
  const auto ramp_windows = static_cast<std::size_t>(cfg.slow_start_min_excluded);
  // Deviated windows after the flat reference window.
  const std::size_t deviated = seed == 0 ? 4 : 3 + static_cast<std::size_t>(rng.below(5));
  const double analysed = static_cast<double>(deviated + 1);

  // The reference window contributes 0% MAPE, so each deviated window carries
  // target * analysed / deviated.
  const double d = planted_mape_pct(target) / 100.0 * analysed / static_cast<double>(deviated);
  const double jitter_max = seed == 0 ? 0.0 : std::min(d, 0.1 * (1.0 - d));

  SampleSeries series;
  series.interval_ms = 100;
  auto& v = series.values;
  v.reserve((ramp_windows + 1 + deviated) * size);

  const std::size_t ramp_len = ramp_windows * size;
  for (std::size_t i = 0; i < ramp_len; ++i) {
    v.push_back(base_kbps * (0.1 + 0.3 * static_cast<double>(i) / static_cast<double>(ramp_len)));
  }
  v.insert(v.end(), size, base_kbps);
  for (std::size_t w = 0; w < deviated; ++w) {
    std::size_t i = 0;
    for (; i + 1 < size; i += 2) {
      const double j = jitter_max * rng.uniform();
      v.push_back(base_kbps * (1.0 - d + j));
      v.push_back(base_kbps * (1.0 - d - j));
    }
    if (i < size) v.push_back(base_kbps * (1.0 - d));
  }
  return series;
}

SpikedSeries spiked_series(double level_kbps, std::size_t length, std::int64_t interval_ms,
                           double noise_cv, double spike_rate, CounterRng& rng) {
  SpikedSeries out;
  out.series.interval_ms = interval_ms;
  out.clean.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.clean.push_back(level_kbps * rng.unit_lognormal(noise_cv));
  out.series.values = out.clean;
  std::optional<std::size_t> last;
  for (std::size_t i = 0; i < length; ++i) {
    const double u = rng.uniform();
    const double factor = rng.uniform(3.0, 4.0);
    if (u < spike_rate && (!last || i - *last >= kSpikeSpacing)) {
      out.series.values[i] = out.clean[i] * factor;
      out.spike_indices.push_back(i);
      last = i;
    }
  }
  return out;
}

// ------------------------------------------------------------- generate

SynthOutput generate(const ScenarioConfig& config) {
  validate(config);

  SynthOutput out;
  GroundTruth& truth = out.truth;
  truth.run_id = run_id_for(config);
  truth.scenario = config.scenario;
  truth.seed = config.seed;
  truth.diurnal_dip = config.scenario == Scenario::STATIONARY_24H ? config.diurnal_dip : 0.0;
  const std::string id_prefix = truth.run_id.substr(6);

  const std::int64_t interval = kMsPerHour / config.records_per_hour;
  std::vector<Slot> slots;
  std::vector<std::size_t> segment_start;  // COMMUTE: first slot of each cell

  if (config.scenario == Scenario::STATIONARY_24H) {
    const std::size_t n = static_cast<std::size_t>(config.records_per_hour) * 24;
    for (std::size_t i = 0; i < n; ++i) {
      Slot s;
      s.timestamp = config.start_ms + static_cast<std::int64_t>(i) * interval;
      const int hour = local_hour(s.timestamp, config.utc_offset_minutes);
      s.level_kbps = config.busy_hours.contains(hour)
                         ? config.base_capacity_kbps * (1.0 - config.diurnal_dip)
                         : config.base_capacity_kbps;
      s.cell_id = config.stationary_cell_id;
      s.technology = config.stationary_technology;
      slots.push_back(std::move(s));
    }
  } else {
    const std::set<std::size_t> gapped(config.gapped_boundaries.begin(),
                                       config.gapped_boundaries.end());
    std::int64_t t = config.start_ms;
    for (std::size_t c = 0; c < config.cells.size(); ++c) {
      if (c > 0 && gapped.count(c - 1)) t += config.injected_gap_ms;
      segment_start.push_back(slots.size());
      for (int k = 0; k < config.records_per_cell; ++k) {
        Slot s;
        s.timestamp = t;
        s.level_kbps = config.cells[c].capacity_kbps;
        s.cell_id = config.cells[c].cell_id;
        s.technology = config.cells[c].technology;
        s.signal_center_dbm = config.cells[c].signal_dbm;
        s.commute = true;
        slots.push_back(std::move(s));
        t += interval;
      }
    }
  }

  const CounterRng root(config.seed);
  std::vector<std::optional<CongestionPool>> pools(slots.size());
  if (config.planted_pool_mix) {
    std::vector<CongestionPool> quota = pool_quota(*config.planted_pool_mix, slots.size());
    CounterRng shuffle = root.fork(1);
    for (std::size_t i = quota.size(); i > 1; --i) {
      std::swap(quota[i - 1], quota[shuffle.below(i)]);
    }
    for (std::size_t i = 0; i < slots.size(); ++i) pools[i] = quota[i];
  }

  const AnalysisConfig plant_cfg{};
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const Slot& slot = slots[i];
    CounterRng rng = root.fork(1000 + i);

    PlantedRecord planted;
    char idbuf[32];
    std::snprintf(idbuf, sizeof idbuf, "%06zu", i + 1);
    planted.record_id = id_prefix + "-" + idbuf;
    planted.cell_id = slot.cell_id;
    planted.local_hour = local_hour(slot.timestamp, config.utc_offset_minutes);
    planted.true_mean_kbps = slot.level_kbps;
    planted.planted_pool = pools[i];

    SampleSeries series;
    if (pools[i]) {
      series = plant_pool(*pools[i], plant_cfg, 1.0, rng.next_u64() | 1);
      const double scale = slot.level_kbps * rng.unit_lognormal(config.noise_cv) / mean_of(series.values);
      for (double& x : series.values) x *= scale;
      series.interval_ms = config.sample_interval_ms;
    } else {
      SpikedSeries spiked =
          spiked_series(slot.level_kbps, static_cast<std::size_t>(config.samples_per_record),
                        config.sample_interval_ms, config.noise_cv, config.spike_rate, rng);
      series = std::move(spiked.series);
      planted.spike_indices = std::move(spiked.spike_indices);
    }

    MeasurementRecord r;
    r.record_id = planted.record_id;
    r.user_id = config.user_id;
    r.timestamp = slot.timestamp;
    r.latitude = 12.9716 + (slot.commute ? 0.0005 * static_cast<double>(i) : 0.0);
    r.longitude = 77.5946;
    r.latency_ms = std::round(30.0 + 40.0 * rng.uniform());
    r.download_kbps = mean_of(series.values);
    r.upload_kbps = r.download_kbps * 0.3 * rng.unit_lognormal(config.noise_cv);
    r.manufacturer = config.manufacturer;
    r.model = config.model;
    r.os_name = config.os_name;
    r.os_version = config.os_version;
    r.network_operator = config.network_operator;
    r.subscriber_operator = config.subscriber_operator;
    r.signal_dbm = slot.commute ? slot.signal_center_dbm + rng.uniform(-1.0, 1.0)
                                : rng.uniform(config.signal_min_dbm, config.signal_max_dbm);
    r.cell_id = slot.cell_id;
    r.technology = slot.technology;
    r.samples = std::move(series);
    r.region_tag = config.region_tag;
    r.plan_id = config.plan_id;

    out.records.push_back(std::move(r));
    truth.records.push_back(std::move(planted));
  }

  // Hourly truth from the planted levels.
  std::array<double, 24> level_sum{};
  std::array<std::size_t, 24> level_n{};
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const auto h = static_cast<std::size_t>(truth.records[i].local_hour);
    level_sum[h] += slots[i].level_kbps;
    ++level_n[h];
  }
  double busy_sum = 0.0;
  double off_sum = 0.0;
  std::size_t busy_n = 0;
  std::size_t off_n = 0;
  truth.hourly_true_means.resize(24);
  for (int h = 0; h < 24; ++h) {
    const auto idx = static_cast<std::size_t>(h);
    if (level_n[idx] == 0) continue;
    const double m = level_sum[idx] / static_cast<double>(level_n[idx]);
    truth.hourly_true_means[idx] = m;
    if (config.busy_hours.contains(h)) {
      busy_sum += m;
      ++busy_n;
    } else {
      off_sum += m;
      ++off_n;
    }
  }
  if (busy_n) truth.true_busy_mean_kbps = busy_sum / static_cast<double>(busy_n);
  if (off_n) truth.true_offpeak_mean_kbps = off_sum / static_cast<double>(off_n);

  if (config.scenario == Scenario::COMMUTE) {
    const std::set<std::size_t> gapped(config.gapped_boundaries.begin(),
                                       config.gapped_boundaries.end());
    for (std::size_t c = 0; c + 1 < config.cells.size(); ++c) {
      const CellSpec& from = config.cells[c];
      const CellSpec& to = config.cells[c + 1];
      if (from.cell_id == to.cell_id) continue;
      const std::size_t first = segment_start[c + 1];
      PlantedHandover h;
      h.at_ms = slots[first].timestamp;
      h.from_record = out.records[first - 1].record_id;
      h.to_record = out.records[first].record_id;
      h.from_cell = from.cell_id;
      h.to_cell = to.cell_id;
      h.from_tech = from.technology;
      h.to_tech = to.technology;
      h.downgrade = is_downgrade(from.technology, to.technology);
      h.gap_injected = gapped.count(c) > 0;
      truth.handovers.push_back(std::move(h));
    }
  }
  return out;
}

}  // namespace mobnet
