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

#include <string>
#include <vector>

#include "json.hpp"
#include "mobnet/attribution.hpp"
#include "mobnet/congestion.hpp"
#include "mobnet/coverage.hpp"
#include "mobnet/reports.hpp"

namespace mobnet {

/// Shortest round-trip decimal form, independent of the C locale.
std::string format_number(double value);

/// Quotes a CSV cell when it contains a comma, quote or newline.
std::string csv_cell(const std::string& text);

/// A serialized report: full JSON structure plus a flat plot-ready CSV.
struct RenderedReport {
  std::string json;
  std::string csv;
};

struct HandoverReport {
  std::vector<HandoverEvent> events;
  HandoverImpact impact;
  HandoverImpact downgrade_impact;
  std::vector<OperatorCoverage> operators;
};

RenderedReport render(const Histogram& report);
RenderedReport render(const HourlyReport& report);
RenderedReport render(const TrendReport& report);
RenderedReport render(const std::vector<OperatorSummary>& report);
RenderedReport render(const PoolTrend& report);
RenderedReport render(const SignalCorrelation& report);
RenderedReport render(const std::vector<CampingStats>& report);
RenderedReport render(const HandoverReport& report);

nlohmann::ordered_json to_json(const HandoverEvent& event);
HandoverEvent handover_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const CongestionAssessment& assessment);
CongestionAssessment assessment_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const LimitingFactorVerdict& verdict);
LimitingFactorVerdict verdict_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const HandoverImpact& impact);

nlohmann::ordered_json to_json(const AnalysisConfig& cfg);
/// Overlays the fields present in `j` onto `base`. Unknown keys throw
/// ConfigError.
AnalysisConfig config_from_json(const nlohmann::json& j, AnalysisConfig base = {});

}  // namespace mobnet
