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

#include "mobnet/attribution.hpp"

#include <array>
#include <stdexcept>

namespace mobnet {

namespace {

constexpr std::array<std::pair<LimitingFactor, std::string_view>, 6> kFactorNames{{
    {LimitingFactor::DEVICE, "DEVICE"},
    {LimitingFactor::TECHNOLOGY, "TECHNOLOGY"},
    {LimitingFactor::PLAN, "PLAN"},
    {LimitingFactor::CONGESTION, "CONGESTION"},
    {LimitingFactor::COVERAGE, "COVERAGE"},
    {LimitingFactor::UNDETERMINED, "UNDETERMINED"},
}};

// Lower value wins a tie between equal caps.
int tie_priority(LimitingFactor factor) {
  switch (factor) {
    case LimitingFactor::PLAN:
      return 0;
    case LimitingFactor::DEVICE:
      return 1;
    case LimitingFactor::TECHNOLOGY:
      return 2;
    default:
      return 3;
  }
}

}  // namespace

std::string_view to_string(LimitingFactor factor) {
  for (const auto& [f, name] : kFactorNames) {
    if (f == factor) return name;
  }
  return "UNDETERMINED";
}

std::optional<LimitingFactor> parse_factor(std::string_view text) {
  for (const auto& [f, name] : kFactorNames) {
    if (text == name) return f;
  }
  return std::nullopt;
}

std::map<LimitingFactor, double> upper_bounds(const MeasurementRecord& record,
                                              const CapabilityCatalog& catalog) {
  std::map<LimitingFactor, double> caps;
  const auto device =
      catalog.device_caps.find(DeviceKey{record.manufacturer, record.model, record.technology});
  if (device != catalog.device_caps.end()) caps[LimitingFactor::DEVICE] = device->second;

  const auto tech = catalog.tech_caps.find(record.technology);
  if (tech != catalog.tech_caps.end()) caps[LimitingFactor::TECHNOLOGY] = tech->second;

  if (record.plan_id) {
    const auto plan = catalog.plan_caps.find(PlanKey{record.subscriber_operator, *record.plan_id});
    if (plan != catalog.plan_caps.end()) caps[LimitingFactor::PLAN] = plan->second;
  }
  return caps;
}

LimitingFactorVerdict attribute(const MeasurementRecord& record, const CapabilityCatalog& catalog,
                                const std::optional<CongestionAssessment>& assessment,
                                bool handover_nearby, const AnalysisConfig& cfg) {
  LimitingFactorVerdict verdict;
  if (assessment) verdict.congestion_pool = assessment->pool;

  const auto caps = upper_bounds(record, catalog);
  if (!caps.empty()) {
    auto binding = caps.begin();
    for (auto it = caps.begin(); it != caps.end(); ++it) {
      if (it->second < binding->second ||
          (it->second == binding->second && tie_priority(it->first) < tie_priority(binding->first))) {
        binding = it;
      }
    }
    verdict.binding_upper_bound_kbps = binding->second;
    if (record.download_kbps >= cfg.attribution_alpha * binding->second) {
      verdict.factor = binding->first;
      verdict.artificial = true;
      return verdict;
    }
  }

  if (handover_nearby) {
    verdict.factor = LimitingFactor::COVERAGE;
  } else if (assessment && assessment->pool != CongestionPool::LOW) {
    verdict.factor = LimitingFactor::CONGESTION;
  } else {
    verdict.factor = LimitingFactor::UNDETERMINED;
  }
  return verdict;
}

std::vector<MeasurementRecord> filter_natural(const std::vector<MeasurementRecord>& records,
                                              const std::vector<LimitingFactorVerdict>& verdicts) {
  if (records.size() != verdicts.size()) {
    throw std::invalid_argument("filter_natural: records and verdicts differ in length");
  }
  std::vector<MeasurementRecord> natural;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!verdicts[i].artificial) natural.push_back(records[i]);
  }
  return natural;
}

}  // namespace mobnet
