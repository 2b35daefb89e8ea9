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
#include <filesystem>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mobnet/model.hpp"

namespace mobnet {

/// Fatal I/O failure (unreadable input, unwritable output).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IngestIssue {
  std::size_t line = 0;  // 1-based
  std::string reason;

  bool operator==(const IngestIssue&) const = default;
};

/// accepted + rejected == number of non-blank lines parsed. Every rejection
/// also appears in `rejections` with its reason.
struct IngestReport {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::vector<IngestIssue> warnings;
  std::vector<IngestIssue> rejections;
};

struct RecordLoad {
  std::vector<MeasurementRecord> records;
  IngestReport report;
};

/// Parses JSON Lines. Malformed or invalid lines are rejected, never fatal.
RecordLoad read_records(std::istream& in);
RecordLoad read_records(const std::filesystem::path& path);

/// One compact JSON object per line, keys in schema order. Absent optional
/// fields are omitted.
void write_records(std::ostream& out, const std::vector<MeasurementRecord>& records);
std::string record_to_json_line(const MeasurementRecord& record);

struct CatalogLoad {
  CapabilityCatalog catalog;
  IngestReport report;
};

/// CSV with header `kind,manufacturer,model,technology,operator,plan_id,cap_kbps`.
/// Tech rows are applied first so device rows can be checked against them
/// regardless of row order. Duplicate keys: last row wins, with a warning.
CatalogLoad read_catalog(std::istream& in);
CatalogLoad read_catalog(const std::filesystem::path& path);

/// One user's measurements on one subscription, ordered by (timestamp, record_id).
struct Session {
  std::string user_id;
  std::string subscriber_operator;
  std::vector<MeasurementRecord> records;
};

/// Partitions by (user_id, subscriber_operator). Sessions come out in key order.
std::vector<Session> build_sessions(std::vector<MeasurementRecord> records);

}  // namespace mobnet
