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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mobnet/congestion.hpp"
#include "mobnet/model.hpp"

namespace mobnet {

/// Counter-based pseudo-random generator (SplitMix64).
///
/// The k-th output (k = 1, 2, ...) is mix64(key + k * 0x9E3779B97F4A7C15)
/// where mix64 is the SplitMix64 finaliser:
///   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
///   z ^= z >> 27; z *= 0x94D049BB133111EB;
///   z ^= z >> 31.
/// Independent streams use key' = mix64(key ^ mix64(stream + 0x632BE59BD9B4E019)).
/// Uniforms are (u64 >> 11) * 2^-53. Normals use Box-Muller with
/// u1 = ((u64 >> 11) + 1) * 2^-53, u2 uniform, z = sqrt(-2 ln u1) cos(2 pi u2).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  static std::uint64_t mix64(std::uint64_t z);

  std::uint64_t next_u64();
  /// [0, 1)
  double uniform();
  /// [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  /// Log-normal with mean 1 and the given coefficient of variation.
  double unit_lognormal(double cv);
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  CounterRng fork(std::uint64_t stream) const;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

enum class Scenario { STATIONARY_24H, COMMUTE };

struct CellSpec {
  std::string cell_id;
  RadioTechnology technology = RadioTechnology::UMTS;
  double capacity_kbps = 0.0;
  double signal_dbm = -75.0;
};

struct PoolMix {
  double low = 0.0;
  double medium = 0.0;
  double high = 0.0;
};

struct ScenarioConfig {
  std::uint64_t seed = 1;
  Scenario scenario = Scenario::STATIONARY_24H;
  double base_capacity_kbps = 5000.0;
  double diurnal_dip = 0.6;
  HourRange busy_hours{};
  std::vector<CellSpec> cells;  // COMMUTE walk order
  int records_per_hour = 12;
  std::int64_t sample_interval_ms = 100;
  int samples_per_record = 50;
  double spike_rate = 0.02;
  double noise_cv = 0.1;
  // With a mix, sample series come from plant_pool and carry no spikes; the
  // pools are assigned by exact quota and shuffled.
  std::optional<PoolMix> planted_pool_mix;

  // Local midnight of the first day; default 2015-06-01 00:00 at +05:30.
  std::int64_t start_ms = 1433097000000;
  int utc_offset_minutes = 330;
  int records_per_cell = 20;                     // COMMUTE segment length
  std::vector<std::size_t> gapped_boundaries;    // COMMUTE boundary k sits between cells k and k+1
  std::int64_t injected_gap_ms = 600000;
  std::string user_id = "user-0001";
  std::string network_operator = "OperatorA";
  std::string subscriber_operator = "OperatorA";
  std::optional<std::string> region_tag = std::string("urban");
  std::string stationary_cell_id = "cell-0001";
  RadioTechnology stationary_technology = RadioTechnology::HSPA;
  // STATIONARY_24H draws signal uniformly here, independent of throughput.
  double signal_min_dbm = -100.0;
  double signal_max_dbm = -50.0;
  std::string manufacturer = "Acme";
  std::string model = "A1";
  std::string os_name = "Android";
  std::string os_version = "6.0";
  std::optional<std::string> plan_id;
};

/// Throws ConfigError describing the first violated constraint.
void validate(const ScenarioConfig& config);

/// Ready-to-run defaults. COMMUTE walks four cells (3G, 2G, 3G, 4G) at 120
/// records per hour so adjacent records are 30 s apart.
ScenarioConfig default_scenario(Scenario scenario);

nlohmann::ordered_json to_json(const ScenarioConfig& config);
/// Overlays the fields present in `j` onto `base`; unknown keys throw ConfigError.
ScenarioConfig scenario_from_json(const nlohmann::json& j, ScenarioConfig base = {});
std::string to_string(Scenario scenario);
std::optional<Scenario> parse_scenario(std::string_view text);

struct PlantedRecord {
  std::string record_id;
  std::string cell_id;
  int local_hour = 0;
  double true_mean_kbps = 0.0;
  std::optional<CongestionPool> planted_pool;
  std::vector<std::size_t> spike_indices;
};

struct PlantedHandover {
  std::int64_t at_ms = 0;
  std::string from_record;
  std::string to_record;
  std::string from_cell;
  std::string to_cell;
  RadioTechnology from_tech = RadioTechnology::UNKNOWN;
  RadioTechnology to_tech = RadioTechnology::UNKNOWN;
  bool downgrade = false;
  bool gap_injected = false;
};

struct GroundTruth {
  std::string run_id;
  Scenario scenario = Scenario::STATIONARY_24H;
  std::uint64_t seed = 0;
  double diurnal_dip = 0.0;
  std::optional<double> true_busy_mean_kbps;
  std::optional<double> true_offpeak_mean_kbps;
  std::vector<std::optional<double>> hourly_true_means;  // 24 entries
  std::vector<PlantedRecord> records;                     // one per emitted record
  std::vector<PlantedHandover> handovers;
};

nlohmann::ordered_json to_json(const GroundTruth& truth);

struct SynthOutput {
  std::vector<MeasurementRecord> records;
  GroundTruth truth;
};

/// Deterministic in `config` (seed included).
SynthOutput generate(const ScenarioConfig& config);

/// "synth-" followed by the FNV-1a 64 hash of the canonical config JSON.
std::string run_id_for(const ScenarioConfig& config);

/// A series that classify() assigns to `target` under `cfg`: a slow-start
/// ramp, one flat window at base_kbps, then windows at base*(1-d) whose
/// overall MAPE is 5% (LOW), 15% (MEDIUM) or 40% (HIGH). seed 0 gives the
/// plain construction with four deviated windows; other seeds vary the window
/// count and add MAPE-preserving paired jitter.
SampleSeries plant_pool(CongestionPool target, const AnalysisConfig& cfg, double base_kbps,
                        std::uint64_t seed = 0);

/// Planted overall MAPE for each pool.
double planted_mape_pct(CongestionPool target);

struct SpikedSeries {
  SampleSeries series;
  std::vector<double> clean;                // before spikes
  std::vector<std::size_t> spike_indices;   // ascending
};

/// level * lognormal(noise_cv) samples; each sample turns into a spike with
/// probability spike_rate, multiplied by a factor in [3, 4). Spikes are kept
/// at least kSpikeSpacing samples apart.
SpikedSeries spiked_series(double level_kbps, std::size_t length, std::int64_t interval_ms,
                           double noise_cv, double spike_rate, CounterRng& rng);

inline constexpr std::size_t kSpikeSpacing = 5;

}  // namespace mobnet
