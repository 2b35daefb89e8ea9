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

#include "mobnet/ingest.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace mobnet {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Thrown while decoding a single line; becomes a rejection.
struct LineError {
  std::string reason;
};

constexpr std::array<std::string_view, 24> kKnownFields{
    "record_id",     "user_id",      "timestamp",           "latitude",
    "longitude",     "latency_ms",   "download_kbps",       "upload_kbps",
    "manufacturer",  "model",        "os_name",             "os_version",
    "network_operator", "subscriber_operator", "signal_dbm", "cell_id",
    "cell_latitude", "cell_longitude", "technology",        "ip_address",
    "transport_port", "samples",     "region_tag",          "plan_id"};

const json* find_field(const json& obj, const char* name) {
  const auto it = obj.find(name);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

std::string required_string(const json& obj, const char* name) {
  const json* v = find_field(obj, name);
  if (!v) throw LineError{std::string("missing field ") + name};
  if (!v->is_string()) throw LineError{std::string("field ") + name + " must be a string"};
  return v->get<std::string>();
}

double required_number(const json& obj, const char* name) {
  const json* v = find_field(obj, name);
  if (!v) throw LineError{std::string("missing field ") + name};
  if (!v->is_number()) throw LineError{std::string("field ") + name + " must be a number"};
  return v->get<double>();
}

std::optional<double> optional_number(const json& obj, const char* name) {
  const json* v = find_field(obj, name);
  if (!v) return std::nullopt;
  if (!v->is_number()) throw LineError{std::string("field ") + name + " must be a number"};
  return v->get<double>();
}

std::optional<std::string> optional_string(const json& obj, const char* name) {
  const json* v = find_field(obj, name);
  if (!v) return std::nullopt;
  if (!v->is_string()) throw LineError{std::string("field ") + name + " must be a string"};
  return v->get<std::string>();
}

std::int64_t integer_value(const json& v, const char* name) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == static_cast<double>(static_cast<std::int64_t>(d))) return static_cast<std::int64_t>(d);
  }
  throw LineError{std::string("field ") + name + " must be an integer"};
}

MeasurementRecord decode_record(const json& obj, std::vector<std::string>& warnings) {
  if (!obj.is_object()) throw LineError{"line is not a JSON object"};

  MeasurementRecord r;
  r.record_id = required_string(obj, "record_id");
  r.user_id = required_string(obj, "user_id");
  const json* ts = find_field(obj, "timestamp");
  if (!ts) throw LineError{"missing field timestamp"};
  r.timestamp = integer_value(*ts, "timestamp");
  r.latitude = optional_number(obj, "latitude");
  r.longitude = optional_number(obj, "longitude");
  r.latency_ms = optional_number(obj, "latency_ms");
  r.download_kbps = required_number(obj, "download_kbps");
  r.upload_kbps = required_number(obj, "upload_kbps");
  r.manufacturer = required_string(obj, "manufacturer");
  r.model = required_string(obj, "model");
  r.os_name = required_string(obj, "os_name");
  r.os_version = required_string(obj, "os_version");
  r.network_operator = required_string(obj, "network_operator");
  r.subscriber_operator = required_string(obj, "subscriber_operator");
  r.signal_dbm = optional_number(obj, "signal_dbm");
  if (const json* cell = find_field(obj, "cell_id")) {
    if (cell->is_string()) {
      r.cell_id = cell->get<std::string>();
    } else if (cell->is_number_integer()) {
      r.cell_id = cell->dump();
    } else {
      throw LineError{"field cell_id must be a string"};
    }
  }
  r.cell_latitude = optional_number(obj, "cell_latitude");
  r.cell_longitude = optional_number(obj, "cell_longitude");

  const std::string tech = required_string(obj, "technology");
  if (auto parsed = parse_technology(tech)) {
    r.technology = *parsed;
  } else {
    r.technology = RadioTechnology::UNKNOWN;
    warnings.push_back("unrecognised technology '" + tech + "' read as UNKNOWN");
  }

  r.ip_address = optional_string(obj, "ip_address");
  if (const json* port = find_field(obj, "transport_port")) {
    r.transport_port = integer_value(*port, "transport_port");
  }
  if (const json* s = find_field(obj, "samples")) {
    if (!s->is_object()) throw LineError{"field samples must be an object"};
    SampleSeries series;
    const json* interval = find_field(*s, "interval_ms");
    if (!interval) throw LineError{"missing field samples.interval_ms"};
    series.interval_ms = integer_value(*interval, "samples.interval_ms");
    const json* values = find_field(*s, "values");
    if (!values || !values->is_array()) throw LineError{"field samples.values must be an array"};
    series.values.reserve(values->size());
    for (const json& v : *values) {
      if (!v.is_number()) throw LineError{"field samples.values must hold numbers"};
      series.values.push_back(v.get<double>());
    }
    r.samples = std::move(series);
  }
  r.region_tag = optional_string(obj, "region_tag");
  r.plan_id = optional_string(obj, "plan_id");

  for (const auto& item : obj.items()) {
    if (std::find(kKnownFields.begin(), kKnownFields.end(), item.key()) == kKnownFields.end()) {
      warnings.push_back("unknown field '" + item.key() + "' ignored");
    }
  }
  return r;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

// Minimal RFC 4180 field splitter: quoted fields, doubled quotes, no
// embedded newlines.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  out.push_back(std::move(field));
  return out;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

}  // namespace

RecordLoad read_records(std::istream& in) {
  RecordLoad load;
  std::set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    auto reject = [&](std::string reason) {
      ++load.report.rejected;
      load.report.rejections.push_back({line_no, std::move(reason)});
    };

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error&) {
      reject("malformed JSON");
      continue;
    }

    std::vector<std::string> warnings;
    MeasurementRecord record;
    try {
      record = decode_record(obj, warnings);
    } catch (const LineError& e) {
      reject(e.reason);
      continue;
    } catch (const json::exception&) {
      reject("field out of range");
      continue;
    }

    RecordCheck check = validate(record);
    if (check.error) {
      reject(*check.error);
      continue;
    }
    if (!seen_ids.insert(record.record_id).second) {
      reject("duplicate record_id");
      continue;
    }
    for (auto& w : warnings) load.report.warnings.push_back({line_no, std::move(w)});
    for (auto& w : check.warnings) load.report.warnings.push_back({line_no, std::move(w)});
    ++load.report.accepted;
    load.records.push_back(std::move(record));
  }
  return load;
}

RecordLoad read_records(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_records(in);
}

std::string record_to_json_line(const MeasurementRecord& r) {
  ordered_json j;
  j["record_id"] = r.record_id;
  j["user_id"] = r.user_id;
  j["timestamp"] = r.timestamp;
  if (r.latitude) j["latitude"] = *r.latitude;
  if (r.longitude) j["longitude"] = *r.longitude;
  if (r.latency_ms) j["latency_ms"] = *r.latency_ms;
  j["download_kbps"] = r.download_kbps;
  j["upload_kbps"] = r.upload_kbps;
  j["manufacturer"] = r.manufacturer;
  j["model"] = r.model;
  j["os_name"] = r.os_name;
  j["os_version"] = r.os_version;
  j["network_operator"] = r.network_operator;
  j["subscriber_operator"] = r.subscriber_operator;
  if (r.signal_dbm) j["signal_dbm"] = *r.signal_dbm;
  if (r.cell_id) j["cell_id"] = *r.cell_id;
  if (r.cell_latitude) j["cell_latitude"] = *r.cell_latitude;
  if (r.cell_longitude) j["cell_longitude"] = *r.cell_longitude;
  j["technology"] = std::string(to_string(r.technology));
  if (r.ip_address) j["ip_address"] = *r.ip_address;
  if (r.transport_port) j["transport_port"] = *r.transport_port;
  if (r.samples) {
    ordered_json s;
    s["interval_ms"] = r.samples->interval_ms;
    s["values"] = r.samples->values;
    j["samples"] = std::move(s);
  }
  if (r.region_tag) j["region_tag"] = *r.region_tag;
  if (r.plan_id) j["plan_id"] = *r.plan_id;
  return j.dump();
}

void write_records(std::ostream& out, const std::vector<MeasurementRecord>& records) {
  for (const auto& r : records) out << record_to_json_line(r) << '\n';
}

CatalogLoad read_catalog(std::istream& in) {
  CatalogLoad load;
  IngestReport& report = load.report;

  struct Row {
    std::size_t line;
    std::vector<std::string> cells;
  };
  std::vector<Row> rows;

  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::size_t> column;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cells = split_csv(line);
    for (auto& c : cells) c = trim(std::move(c));
    if (column.empty()) {
      for (std::size_t i = 0; i < cells.size(); ++i) column[cells[i]] = i;
      for (const char* name :
           {"kind", "manufacturer", "model", "technology", "operator", "plan_id", "cap_kbps"}) {
        if (!column.count(name)) throw IoError(std::string("catalog header lacks column ") + name);
      }
      continue;
    }
    rows.push_back({line_no, std::move(cells)});
  }

  auto cell = [&](const Row& row, const char* name) -> std::string {
    const std::size_t i = column.at(name);
    return i < row.cells.size() ? row.cells[i] : std::string{};
  };
  auto reject = [&](const Row& row, std::string reason) {
    ++report.rejected;
    report.rejections.push_back({row.line, std::move(reason)});
  };
  auto parse_cap = [&](const Row& row) -> std::optional<double> {
    const std::string text = cell(row, "cap_kbps");
    double value = 0.0;
    std::istringstream ss(text);
    ss.imbue(std::locale::classic());
    if (text.empty() || !(ss >> value) || !ss.eof()) {
      reject(row, "unparseable cap_kbps");
      return std::nullopt;
    }
    if (!(value > 0.0)) {
      reject(row, "cap_kbps must be > 0");
      return std::nullopt;
    }
    return value;
  };
  auto parse_tech = [&](const Row& row) -> std::optional<RadioTechnology> {
    const auto tech = parse_technology(cell(row, "technology"));
    if (!tech || *tech == RadioTechnology::UNKNOWN) {
      reject(row, "unrecognised technology '" + cell(row, "technology") + "'");
      return std::nullopt;
    }
    return tech;
  };

  // Pass 1: technology caps.
  for (const Row& row : rows) {
    if (cell(row, "kind") != "tech") continue;
    const auto tech = parse_tech(row);
    if (!tech) continue;
    const auto cap = parse_cap(row);
    if (!cap) continue;
    if (load.catalog.tech_caps.count(*tech)) {
      report.warnings.push_back({row.line, "duplicate tech key; last row wins"});
    }
    load.catalog.tech_caps[*tech] = *cap;
    ++report.accepted;
  }

  // Pass 2: device and plan caps, in file order.
  for (const Row& row : rows) {
    const std::string kind = cell(row, "kind");
    if (kind == "tech") continue;
    if (kind == "device") {
      const auto tech = parse_tech(row);
      if (!tech) continue;
      const auto cap = parse_cap(row);
      if (!cap) continue;
      DeviceKey key{cell(row, "manufacturer"), cell(row, "model"), *tech};
      if (key.manufacturer.empty() || key.model.empty()) {
        reject(row, "device row needs manufacturer and model");
        continue;
      }
      const auto standard = load.catalog.tech_caps.find(*tech);
      if (standard != load.catalog.tech_caps.end() && *cap > standard->second) {
        std::ostringstream why;
        why.imbue(std::locale::classic());
        why << "device cap " << *cap << " kbps exceeds " << to_string(*tech) << " cap "
            << standard->second << " kbps";
        reject(row, why.str());
        continue;
      }
      if (load.catalog.device_caps.count(key)) {
        report.warnings.push_back({row.line, "duplicate device key; last row wins"});
      }
      load.catalog.device_caps[key] = *cap;
      ++report.accepted;
    } else if (kind == "plan") {
      const auto cap = parse_cap(row);
      if (!cap) continue;
      PlanKey key{cell(row, "operator"), cell(row, "plan_id")};
      if (key.subscriber_operator.empty() || key.plan_id.empty()) {
        reject(row, "plan row needs operator and plan_id");
        continue;
      }
      if (load.catalog.plan_caps.count(key)) {
        report.warnings.push_back({row.line, "duplicate plan key; last row wins"});
      }
      load.catalog.plan_caps[key] = *cap;
      ++report.accepted;
    } else {
      reject(row, "unknown kind '" + kind + "'");
    }
  }

  std::sort(report.rejections.begin(), report.rejections.end(),
            [](const IngestIssue& a, const IngestIssue& b) { return a.line < b.line; });
  std::stable_sort(report.warnings.begin(), report.warnings.end(),
                   [](const IngestIssue& a, const IngestIssue& b) { return a.line < b.line; });
  return load;
}

CatalogLoad read_catalog(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_catalog(in);
}

std::vector<Session> build_sessions(std::vector<MeasurementRecord> records) {
  std::map<std::pair<std::string, std::string>, Session> by_key;
  for (auto& r : records) {
    Session& s = by_key[{r.user_id, r.subscriber_operator}];
    if (s.records.empty()) {
      s.user_id = r.user_id;
      s.subscriber_operator = r.subscriber_operator;
    }
    s.records.push_back(std::move(r));
  }
  std::vector<Session> sessions;
  sessions.reserve(by_key.size());
  for (auto& [key, s] : by_key) {
    std::sort(s.records.begin(), s.records.end(),
              [](const MeasurementRecord& a, const MeasurementRecord& b) {
                return std::tie(a.timestamp, a.record_id) < std::tie(b.timestamp, b.record_id);
              });
    sessions.push_back(std::move(s));
  }
  return sessions;
}

}  // namespace mobnet
