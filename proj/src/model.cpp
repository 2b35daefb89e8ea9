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

#include "mobnet/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

namespace mobnet {

namespace {

constexpr std::array<std::pair<RadioTechnology, std::string_view>, 8> kTechNames{{
    {RadioTechnology::GPRS, "GPRS"},
    {RadioTechnology::EDGE, "EDGE"},
    {RadioTechnology::UMTS, "UMTS"},
    {RadioTechnology::HSPA, "HSPA"},
    {RadioTechnology::HSPA_PLUS, "HSPA_PLUS"},
    {RadioTechnology::LTE, "LTE"},
    {RadioTechnology::WLAN, "WLAN"},
    {RadioTechnology::UNKNOWN, "UNKNOWN"},
}};

std::string upper(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

}  // namespace

std::optional<TechnologyGroup> group_of(RadioTechnology technology) {
  switch (technology) {
    case RadioTechnology::GPRS:
    case RadioTechnology::EDGE:
      return TechnologyGroup::G2;
    case RadioTechnology::UMTS:
    case RadioTechnology::HSPA:
    case RadioTechnology::HSPA_PLUS:
      return TechnologyGroup::G3;
    case RadioTechnology::LTE:
      return TechnologyGroup::G4;
    case RadioTechnology::WLAN:
      return TechnologyGroup::WLAN;
    case RadioTechnology::UNKNOWN:
      break;
  }
  return std::nullopt;
}

std::optional<int> generation_rank(TechnologyGroup group) {
  switch (group) {
    case TechnologyGroup::G2:
      return 2;
    case TechnologyGroup::G3:
      return 3;
    case TechnologyGroup::G4:
      return 4;
    case TechnologyGroup::WLAN:
      break;
  }
  return std::nullopt;
}

bool is_downgrade(RadioTechnology from, RadioTechnology to) {
  const auto from_group = group_of(from);
  const auto to_group = group_of(to);
  if (!from_group || !to_group) return false;
  const auto from_rank = generation_rank(*from_group);
  const auto to_rank = generation_rank(*to_group);
  return from_rank && to_rank && *to_rank < *from_rank;
}

std::string_view to_string(RadioTechnology technology) {
  for (const auto& [tech, name] : kTechNames) {
    if (tech == technology) return name;
  }
  return "UNKNOWN";
}

std::string_view to_string(TechnologyGroup group) {
  switch (group) {
    case TechnologyGroup::G2:
      return "2G";
    case TechnologyGroup::G3:
      return "3G";
    case TechnologyGroup::G4:
      return "4G";
    case TechnologyGroup::WLAN:
      return "WLAN";
  }
  return "WLAN";
}

std::optional<RadioTechnology> parse_technology(std::string_view text) {
  const std::string key = upper(text);
  if (key == "HSPA+") return RadioTechnology::HSPA_PLUS;
  if (key == "WIFI") return RadioTechnology::WLAN;
  for (const auto& [tech, name] : kTechNames) {
    if (key == name) return tech;
  }
  return std::nullopt;
}

std::optional<TechnologyGroup> parse_group(std::string_view text) {
  const std::string key = upper(text);
  if (key == "2G" || key == "G2") return TechnologyGroup::G2;
  if (key == "3G" || key == "G3") return TechnologyGroup::G3;
  if (key == "4G" || key == "G4") return TechnologyGroup::G4;
  if (key == "WLAN") return TechnologyGroup::WLAN;
  return std::nullopt;
}

RecordCheck validate(const MeasurementRecord& record) {
  RecordCheck check;
  auto fail = [&](std::string reason) {
    check.error = std::move(reason);
    return check;
  };

  if (record.record_id.empty()) return fail("empty record_id");
  if (record.timestamp <= 0) return fail("non-positive timestamp");
  if (!std::isfinite(record.download_kbps) || !std::isfinite(record.upload_kbps)) {
    return fail("non-finite throughput");
  }
  if (record.download_kbps < 0.0 || record.upload_kbps < 0.0) return fail("negative throughput");
  if (record.latency_ms && *record.latency_ms < 0.0) return fail("negative latency");

  if (record.samples) {
    const SampleSeries& series = *record.samples;
    if (series.interval_ms <= 0) return fail("non-positive sample interval");
    if (series.values.size() < 2) return fail("sample series shorter than 2");
    double sum = 0.0;
    for (double v : series.values) {
      if (!std::isfinite(v) || v < 0.0) return fail("negative throughput");
      sum += v;
    }
    const double mean = sum / static_cast<double>(series.values.size());
    if (std::abs(record.download_kbps - mean) > 0.01 * mean) {
      return fail("download_kbps disagrees with sample mean");
    }
  }

  if (record.signal_dbm &&
      (*record.signal_dbm < kMinSignalDbm || *record.signal_dbm > kMaxSignalDbm)) {
    check.warnings.emplace_back("signal_dbm outside [-140, -20]");
  }
  if (record.technology == RadioTechnology::UNKNOWN) {
    check.warnings.emplace_back("technology UNKNOWN; excluded from grouped analyses");
  }
  return check;
}

void validate(const AnalysisConfig& cfg) {
  if (cfg.smoothing_half_width < 1) throw ConfigError("smoothing_half_width must be >= 1");
  if (!(cfg.spike_factor > 1.0)) throw ConfigError("spike_factor must be > 1");
  if (cfg.window_size < 2) throw ConfigError("window_size must be >= 2");
  if (!(cfg.rad_stability_max >= 0.0)) throw ConfigError("rad_stability_max must be >= 0");
  if (!(cfg.mape_low_max > 0.0 && cfg.mape_low_max < cfg.mape_medium_max)) {
    throw ConfigError("require 0 < mape_low_max < mape_medium_max");
  }
  if (cfg.slow_start_min_excluded < 0) throw ConfigError("slow_start_min_excluded must be >= 0");
  if (!(cfg.slow_start_activation_fraction >= 0.0 && cfg.slow_start_activation_fraction <= 1.0)) {
    throw ConfigError("slow_start_activation_fraction must be in [0,1]");
  }
  if (!(cfg.attribution_alpha > 0.0 && cfg.attribution_alpha <= 1.0)) {
    throw ConfigError("attribution_alpha must be in (0,1]");
  }
  if (cfg.handover_max_gap_ms < 0) throw ConfigError("handover_max_gap_ms must be >= 0");
  if (cfg.busy_hours.first < 0 || cfg.busy_hours.last > 23 ||
      cfg.busy_hours.first > cfg.busy_hours.last) {
    throw ConfigError("busy_hours must be an inclusive range within 0..23");
  }
  if (!(cfg.histogram_bin_kbps > 0.0)) throw ConfigError("histogram_bin_kbps must be > 0");
  if (!(cfg.signal_bin_dbm > 0.0)) throw ConfigError("signal_bin_dbm must be > 0");
  if (cfg.utc_offset_minutes < -14 * 60 || cfg.utc_offset_minutes > 14 * 60) {
    throw ConfigError("utc_offset_minutes must be within +-14h");
  }
}

}  // namespace mobnet
