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

#include <optional>
#include <string>
#include <vector>

#include "mobnet/attribution.hpp"
#include "mobnet/congestion.hpp"
#include "mobnet/coverage.hpp"
#include "mobnet/ingest.hpp"
#include "mobnet/model.hpp"

namespace mobnet {

struct AnalyzedRecord {
  MeasurementRecord record;
  std::optional<CongestionAssessment> assessment;
  std::optional<std::string> congestion_error;  // why no assessment could be made
  LimitingFactorVerdict verdict;
};

struct AnalysisResult {
  std::vector<AnalyzedRecord> records;  // input order
  std::vector<HandoverEvent> handovers;  // session order, then time order
};

/// Sessions -> handovers -> per-record congestion assessment -> attribution.
/// Records without samples (or too few) get no assessment; that never fails
/// the run.
AnalysisResult analyze(const std::vector<MeasurementRecord>& records,
                       const CapabilityCatalog& catalog, const AnalysisConfig& cfg);

}  // namespace mobnet
