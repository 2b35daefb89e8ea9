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

#include "mobnet/coverage.hpp"

#include <algorithm>
#include <cmath>

namespace mobnet {

std::vector<HandoverEvent> detect_handovers(const Session& session, const AnalysisConfig& cfg) {
  std::vector<HandoverEvent> events;
  const MeasurementRecord* previous = nullptr;
  for (const MeasurementRecord& current : session.records) {
    if (!current.cell_id) continue;
    if (previous && *previous->cell_id != *current.cell_id) {
      const std::int64_t gap = current.timestamp - previous->timestamp;
      if (gap <= cfg.handover_max_gap_ms) {
        HandoverEvent e;
        e.user_id = session.user_id;
        e.subscriber_operator = session.subscriber_operator;
        e.at_ms = current.timestamp;
        e.from_record = previous->record_id;
        e.to_record = current.record_id;
        e.from_cell = *previous->cell_id;
        e.to_cell = *current.cell_id;
        e.from_tech = previous->technology;
        e.to_tech = current.technology;
        e.from_kbps = previous->download_kbps;
        e.to_kbps = current.download_kbps;
        e.from_dbm = previous->signal_dbm;
        e.to_dbm = current.signal_dbm;
        e.downgrade = is_downgrade(e.from_tech, e.to_tech);
        e.gap_ms = gap;
        events.push_back(std::move(e));
      }
    }
    previous = &current;
  }
  return events;
}

std::vector<HandoverEvent> downgrade_events(const std::vector<HandoverEvent>& events) {
  std::vector<HandoverEvent> out;
  std::copy_if(events.begin(), events.end(), std::back_inserter(out),
               [](const HandoverEvent& e) { return e.downgrade; });
  return out;
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

HandoverImpact handover_impact(const std::vector<HandoverEvent>& events) {
  HandoverImpact impact;
  impact.count = events.size();
  double throughput_sum = 0.0;
  double signal_sum = 0.0;
  for (const HandoverEvent& e : events) {
    if (e.from_kbps > 0.0) {
      throughput_sum += e.to_kbps / e.from_kbps;
      ++impact.throughput_ratio_events;
    } else {
      ++impact.throughput_ratio_excluded;
    }
    if (e.from_dbm && e.to_dbm) {
      signal_sum += dbm_to_mw(*e.to_dbm) / dbm_to_mw(*e.from_dbm);
      ++impact.signal_ratio_events;
    } else {
      ++impact.signal_ratio_excluded;
    }
  }
  if (impact.throughput_ratio_events > 0) {
    impact.mean_throughput_ratio =
        throughput_sum / static_cast<double>(impact.throughput_ratio_events);
  }
  if (impact.signal_ratio_events > 0) {
    impact.mean_signal_ratio = signal_sum / static_cast<double>(impact.signal_ratio_events);
  }
  return impact;
}

CampingStats camping_stats(const Session& session, TechnologyGroup subscription_group) {
  if (subscription_group != TechnologyGroup::G3 && subscription_group != TechnologyGroup::G4) {
    throw ConfigError("subscription group must be 3G or 4G");
  }
  const int subscribed_rank = *generation_rank(subscription_group);

  CampingStats stats;
  stats.user_id = session.user_id;
  stats.subscriber_operator = session.subscriber_operator;
  stats.subscription_group = subscription_group;
  for (const MeasurementRecord& r : session.records) {
    const auto group = group_of(r.technology);
    if (!group) continue;
    const auto rank = generation_rank(*group);
    if (!rank) continue;
    ++stats.total;
    if (*rank < subscribed_rank) {
      ++stats.on_lower;
    } else {
      ++stats.on_subscribed;
    }
  }
  if (stats.total > 0) {
    stats.fraction_lower = static_cast<double>(stats.on_lower) / static_cast<double>(stats.total);
  }
  return stats;
}

HandoverIndex::HandoverIndex(const std::vector<HandoverEvent>& events) {
  for (const HandoverEvent& e : events) times_by_user_[e.user_id].push_back(e.at_ms);
  for (auto& [user, times] : times_by_user_) std::sort(times.begin(), times.end());
}

bool HandoverIndex::nearby(const std::string& user_id, std::int64_t timestamp_ms,
                           std::int64_t max_gap_ms) const {
  const auto it = times_by_user_.find(user_id);
  if (it == times_by_user_.end()) return false;
  const auto& times = it->second;
  const auto first = std::lower_bound(times.begin(), times.end(), timestamp_ms - max_gap_ms);
  return first != times.end() && *first <= timestamp_ms + max_gap_ms;
}

std::vector<OperatorCoverage> compare_operators(const std::vector<Session>& sessions,
                                                const std::vector<HandoverEvent>& events) {
  struct Accumulator {
    OperatorCoverage summary;
    std::vector<double> kbps;
    std::vector<double> dbm;
  };
  std::map<std::string, Accumulator> by_operator;
  for (const Session& s : sessions) {
    Accumulator& acc = by_operator[s.subscriber_operator];
    acc.summary.subscriber_operator = s.subscriber_operator;
    for (const MeasurementRecord& r : s.records) {
      ++acc.summary.records;
      acc.kbps.push_back(r.download_kbps);
      if (r.signal_dbm) acc.dbm.push_back(*r.signal_dbm);
      if (const auto group = group_of(r.technology)) {
        if (*group == TechnologyGroup::G2) ++acc.summary.records_2g;
        if (*group == TechnologyGroup::G3) ++acc.summary.records_3g;
        if (*group == TechnologyGroup::G4) ++acc.summary.records_4g;
      }
    }
  }
  for (const HandoverEvent& e : events) {
    auto it = by_operator.find(e.subscriber_operator);
    if (it == by_operator.end()) continue;
    ++it->second.summary.handovers;
    if (e.downgrade) ++it->second.summary.downgrades;
  }

  // Sorted summation keeps the result independent of input order.
  auto sorted_mean = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
  };

  std::vector<OperatorCoverage> out;
  double best = 0.0;
  for (auto& [name, acc] : by_operator) {
    if (!acc.kbps.empty()) acc.summary.mean_kbps = sorted_mean(acc.kbps);
    if (!acc.dbm.empty()) acc.summary.mean_signal_dbm = sorted_mean(acc.dbm);
    best = std::max(best, acc.summary.mean_kbps);
    out.push_back(acc.summary);
  }
  for (OperatorCoverage& c : out) c.relative_to_best = best > 0.0 ? c.mean_kbps / best : 0.0;
  return out;
}

}  // namespace mobnet
