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

#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "mobnet/congestion.hpp"
#include "mobnet/model.hpp"

namespace mobnet {

enum class LimitingFactor { DEVICE, TECHNOLOGY, PLAN, CONGESTION, COVERAGE, UNDETERMINED };

std::string_view to_string(LimitingFactor factor);
std::optional<LimitingFactor> parse_factor(std::string_view text);

/// Device, technology and plan caps are artificial; the rest are natural.
constexpr bool is_artificial(LimitingFactor factor) {
  return factor == LimitingFactor::DEVICE || factor == LimitingFactor::TECHNOLOGY ||
         factor == LimitingFactor::PLAN;
}

struct LimitingFactorVerdict {
  LimitingFactor factor = LimitingFactor::UNDETERMINED;
  std::optional<double> binding_upper_bound_kbps;
  bool artificial = false;
  std::optional<CongestionPool> congestion_pool;

  bool operator==(const LimitingFactorVerdict&) const = default;
};

/// Catalog caps that apply to this record, keyed by DEVICE / TECHNOLOGY / PLAN.
std::map<LimitingFactor, double> upper_bounds(const MeasurementRecord& record,
                                              const CapabilityCatalog& catalog);

/// The binding cap is the smallest applicable one (ties: PLAN, DEVICE,
/// TECHNOLOGY). Throughput at or above attribution_alpha times that cap is
/// attributed to it. Below it the verdict is natural: COVERAGE with a nearby
/// handover, else CONGESTION for a MEDIUM/HIGH assessment, else UNDETERMINED.
LimitingFactorVerdict attribute(const MeasurementRecord& record, const CapabilityCatalog& catalog,
                                const std::optional<CongestionAssessment>& assessment,
                                bool handover_nearby, const AnalysisConfig& cfg);

/// Records whose verdict is not artificial, in input order. The two vectors
/// are parallel.
std::vector<MeasurementRecord> filter_natural(const std::vector<MeasurementRecord>& records,
                                              const std::vector<LimitingFactorVerdict>& verdicts);

}  // namespace mobnet
