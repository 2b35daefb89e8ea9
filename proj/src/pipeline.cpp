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

#include "mobnet/pipeline.hpp"

namespace mobnet {

AnalysisResult analyze(const std::vector<MeasurementRecord>& records,
                       const CapabilityCatalog& catalog, const AnalysisConfig& cfg) {
  validate(cfg);
  AnalysisResult result;
  for (const Session& session : build_sessions(records)) {
    auto events = detect_handovers(session, cfg);
    result.handovers.insert(result.handovers.end(), std::make_move_iterator(events.begin()),
                            std::make_move_iterator(events.end()));
  }
  const HandoverIndex index(result.handovers);

  result.records.reserve(records.size());
  for (const MeasurementRecord& record : records) {
    AnalyzedRecord analyzed;
    analyzed.record = record;
    if (record.samples) {
      try {
        analyzed.assessment = classify(*record.samples, cfg);
      } catch (const AnalysisError& e) {
        analyzed.congestion_error = e.what();
      }
    } else {
      analyzed.congestion_error = "no sample series";
    }
    const bool nearby = index.nearby(record.user_id, record.timestamp, cfg.handover_max_gap_ms);
    analyzed.verdict = attribute(record, catalog, analyzed.assessment, nearby, cfg);
    result.records.push_back(std::move(analyzed));
  }
  return result;
}

}  // namespace mobnet
