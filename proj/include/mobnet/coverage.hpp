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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mobnet/ingest.hpp"
#include "mobnet/model.hpp"

namespace mobnet {

/// A change of serving cell between two adjacent cell-bearing records of a
/// session. at_ms is the timestamp of the later record.
struct HandoverEvent {
  std::string user_id;
  std::string subscriber_operator;
  std::int64_t at_ms = 0;
  std::string from_record;
  std::string to_record;
  std::string from_cell;
  std::string to_cell;
  RadioTechnology from_tech = RadioTechnology::UNKNOWN;
  RadioTechnology to_tech = RadioTechnology::UNKNOWN;
  double from_kbps = 0.0;
  double to_kbps = 0.0;
  std::optional<double> from_dbm;
  std::optional<double> to_dbm;
  bool downgrade = false;
  std::int64_t gap_ms = 0;

  bool operator==(const HandoverEvent&) const = default;
};

std::vector<HandoverEvent> detect_handovers(const Session& session, const AnalysisConfig& cfg);

std::vector<HandoverEvent> downgrade_events(const std::vector<HandoverEvent>& events);

struct HandoverImpact {
  std::size_t count = 0;
  std::optional<double> mean_throughput_ratio;  // to_kbps / from_kbps
  std::size_t throughput_ratio_events = 0;
  std::size_t throughput_ratio_excluded = 0;
  std::optional<double> mean_signal_ratio;  // linear mW, to / from
  std::size_t signal_ratio_events = 0;
  std::size_t signal_ratio_excluded = 0;
};

HandoverImpact handover_impact(const std::vector<HandoverEvent>& events);

/// dBm to milliwatts.
double dbm_to_mw(double dbm);

struct CampingStats {
  std::string user_id;
  std::string subscriber_operator;
  TechnologyGroup subscription_group = TechnologyGroup::G4;
  std::size_t total = 0;
  std::size_t on_subscribed = 0;  // includes records above the subscription group
  std::size_t on_lower = 0;
  double fraction_lower = 0.0;
};

/// Counts records by generation relative to the subscription. WLAN and
/// UNKNOWN records are left out of the total. Throws ConfigError unless the
/// subscription is G3 or G4.
CampingStats camping_stats(const Session& session, TechnologyGroup subscription_group);

/// Looks up whether a user had a handover within a time distance.
class HandoverIndex {
 public:
  explicit HandoverIndex(const std::vector<HandoverEvent>& events);

  bool nearby(const std::string& user_id, std::int64_t timestamp_ms, std::int64_t max_gap_ms) const;

 private:
  std::map<std::string, std::vector<std::int64_t>> times_by_user_;
};

/// Per subscriber operator totals for side-by-side coverage comparison in the
/// same area.
struct OperatorCoverage {
  std::string subscriber_operator;
  std::size_t records = 0;
  double mean_kbps = 0.0;
  std::optional<double> mean_signal_dbm;
  std::size_t handovers = 0;
  std::size_t downgrades = 0;
  std::size_t records_2g = 0;
  std::size_t records_3g = 0;
  std::size_t records_4g = 0;
  double relative_to_best = 0.0;  // mean_kbps / best operator mean_kbps
};

std::vector<OperatorCoverage> compare_operators(const std::vector<Session>& sessions,
                                                const std::vector<HandoverEvent>& events);

}  // namespace mobnet
