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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mobnet {

/// Raised for invalid configuration or arguments that violate a documented
/// precondition.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class RadioTechnology { GPRS, EDGE, UMTS, HSPA, HSPA_PLUS, LTE, WLAN, UNKNOWN };

/// Generation buckets. G2 < G3 < G4 is the downgrade ordering; WLAN sits
/// outside that ordering.
enum class TechnologyGroup { G2, G3, G4, WLAN };

std::optional<TechnologyGroup> group_of(RadioTechnology technology);

/// Position of a cellular group in the G2 < G3 < G4 ordering; absent for WLAN.
std::optional<int> generation_rank(TechnologyGroup group);

/// True iff both groups are cellular and `to` is a lower generation than `from`.
bool is_downgrade(RadioTechnology from, RadioTechnology to);

std::string_view to_string(RadioTechnology technology);
std::string_view to_string(TechnologyGroup group);

/// Accepts the enumerator names case-insensitively plus the aliases
/// "HSPA+" and "WIFI".
std::optional<RadioTechnology> parse_technology(std::string_view text);
std::optional<TechnologyGroup> parse_group(std::string_view text);

/// Throughput samples taken at a fixed interval, in kbit/s.
struct SampleSeries {
  std::int64_t interval_ms = 0;
  std::vector<double> values;

  bool operator==(const SampleSeries&) const = default;
};

inline constexpr double kMinSignalDbm = -140.0;
inline constexpr double kMaxSignalDbm = -20.0;

/// One crowd-sourced measurement. Throughputs are kbit/s, timestamps are UTC
/// epoch milliseconds.
struct MeasurementRecord {
  std::string record_id;
  std::string user_id;
  std::int64_t timestamp = 0;
  std::optional<double> latitude;
  std::optional<double> longitude;
  std::optional<double> latency_ms;
  double download_kbps = 0.0;
  double upload_kbps = 0.0;
  std::string manufacturer;
  std::string model;
  std::string os_name;
  std::string os_version;
  std::string network_operator;
  std::string subscriber_operator;
  std::optional<double> signal_dbm;
  std::optional<std::string> cell_id;
  // Base-station coordinates are carried through untouched.
  std::optional<double> cell_latitude;
  std::optional<double> cell_longitude;
  RadioTechnology technology = RadioTechnology::UNKNOWN;
  std::optional<std::string> ip_address;
  std::optional<std::int64_t> transport_port;
  std::optional<SampleSeries> samples;
  std::optional<std::string> region_tag;
  std::optional<std::string> plan_id;

  bool operator==(const MeasurementRecord&) const = default;
};

/// Outcome of checking a record against its invariants. `error` set means the
/// record must be rejected; `warnings` never cause rejection.
struct RecordCheck {
  std::optional<std::string> error;
  std::vector<std::string> warnings;
};

RecordCheck validate(const MeasurementRecord& record);

struct DeviceKey {
  std::string manufacturer;
  std::string model;
  RadioTechnology technology = RadioTechnology::UNKNOWN;

  auto operator<=>(const DeviceKey&) const = default;
};

struct PlanKey {
  std::string subscriber_operator;
  std::string plan_id;

  auto operator<=>(const PlanKey&) const = default;
};

/// Theoretical throughput ceilings, kbit/s.
struct CapabilityCatalog {
  std::map<DeviceKey, double> device_caps;
  std::map<RadioTechnology, double> tech_caps;
  std::map<PlanKey, double> plan_caps;

  bool empty() const { return device_caps.empty() && tech_caps.empty() && plan_caps.empty(); }
};

/// Inclusive range of local hours, e.g. 7..17.
struct HourRange {
  int first = 7;
  int last = 17;

  bool contains(int hour) const { return hour >= first && hour <= last; }
  bool operator==(const HourRange&) const = default;
};

struct AnalysisConfig {
  int smoothing_half_width = 2;
  double spike_factor = 2.0;
  int window_size = 10;
  double rad_stability_max = 0.10;
  double mape_low_max = 10.0;
  double mape_medium_max = 25.0;
  int slow_start_min_excluded = 1;
  double slow_start_activation_fraction = 0.5;
  double attribution_alpha = 0.8;
  std::int64_t handover_max_gap_ms = 120000;
  HourRange busy_hours{};
  double histogram_bin_kbps = 500.0;
  double signal_bin_dbm = 5.0;
  // Local time used for hour/quarter/month bucketing; default is IST.
  int utc_offset_minutes = 330;
  std::string urban_tag = "urban";

  bool operator==(const AnalysisConfig&) const = default;
};

/// Throws ConfigError naming the first violated constraint.
void validate(const AnalysisConfig& cfg);

}  // namespace mobnet
