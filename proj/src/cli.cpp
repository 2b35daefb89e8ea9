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

#include "mobnet/cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mobnet/attribution.hpp"
#include "mobnet/coverage.hpp"
#include "mobnet/ingest.hpp"
#include "mobnet/pipeline.hpp"
#include "mobnet/reports.hpp"
#include "mobnet/serialize.hpp"
#include "mobnet/synth.hpp"

namespace mobnet::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

// Signals an exit with a specific code and message.
struct Exit {
  int code;
  std::string message;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::vector<json> read_json_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<json> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error&) {
      throw IoError(path.string() + ": malformed line");
    }
  }
  return out;
}

class Manifest {
 public:
  Manifest(std::string command, ordered_json config)
      : command_(std::move(command)), config_(std::move(config)),
        started_(std::chrono::steady_clock::now()) {}

  void input(const fs::path& path) { inputs_.push_back({path.string(), sha256_file(path)}); }
  void output(const fs::path& dir, const std::string& name) {
    outputs_.push_back({name, sha256_file(dir / name)});
  }

  void write(const fs::path& dir) const {
    ordered_json j;
    j["tool"] = "mobnet";
    j["tool_version"] = std::string(kToolVersion);
    j["command"] = command_;
    j["config"] = config_;
    j["inputs"] = ordered_json::array();
    for (const auto& [path, digest] : inputs_) j["inputs"].push_back({{"path", path}, {"sha256", digest}});
    j["outputs"] = ordered_json::array();
    for (const auto& [path, digest] : outputs_) j["outputs"].push_back({{"path", path}, {"sha256", digest}});
    j["wall_time_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - started_)
                            .count();
    write_file(dir / "manifest.json", j.dump(2) + "\n");
  }

 private:
  std::string command_;
  ordered_json config_;
  std::chrono::steady_clock::time_point started_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::pair<std::string, std::string>> outputs_;
};

AnalysisConfig load_analysis_config(const std::string& config_path, CLI::Option* offset_opt,
                                    int offset_minutes) {
  AnalysisConfig cfg;
  if (!config_path.empty()) cfg = config_from_json(read_json_file(config_path));
  if (offset_opt->count() > 0) cfg.utc_offset_minutes = offset_minutes;
  validate(cfg);
  return cfg;
}

// ----------------------------------------------------------------- synth

struct SynthArgs {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string out;
  std::string config;
  double diurnal_dip = 0.0;
  double base_capacity = 0.0;
  int records_per_hour = 0;
  int samples_per_record = 0;
  std::int64_t sample_interval_ms = 0;
  double spike_rate = 0.0;
  double noise_cv = 0.0;
  int utc_offset = 0;
  std::map<std::string, CLI::Option*> opts;

  bool given(const std::string& name) const { return opts.at(name)->count() > 0; }
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  json file;
  if (!a.config.empty()) file = read_json_file(a.config);
  if (!file.is_null() && !file.is_object()) throw ConfigError("scenario config must be a JSON object");

  Scenario scenario = Scenario::STATIONARY_24H;
  std::string scenario_name = a.given("--scenario") ? a.scenario
                              : (file.is_object() && file.contains("scenario"))
                                  ? file["scenario"].get<std::string>()
                                  : std::string("stationary24h");
  if (const auto s = parse_scenario(scenario_name)) {
    scenario = *s;
  } else {
    throw ConfigError("unknown scenario '" + scenario_name + "' (stationary24h|commute)");
  }

  ScenarioConfig config = default_scenario(scenario);
  if (file.is_object()) config = scenario_from_json(file, config);
  config.scenario = scenario;
  if (a.given("--seed")) config.seed = a.seed;
  if (a.given("--diurnal-dip")) config.diurnal_dip = a.diurnal_dip;
  if (a.given("--base-capacity-kbps")) config.base_capacity_kbps = a.base_capacity;
  if (a.given("--records-per-hour")) config.records_per_hour = a.records_per_hour;
  if (a.given("--samples-per-record")) config.samples_per_record = a.samples_per_record;
  if (a.given("--sample-interval-ms")) config.sample_interval_ms = a.sample_interval_ms;
  if (a.given("--spike-rate")) config.spike_rate = a.spike_rate;
  if (a.given("--noise-cv")) config.noise_cv = a.noise_cv;
  if (a.given("--utc-offset-minutes")) config.utc_offset_minutes = a.utc_offset;
  validate(config);

  const SynthOutput generated = generate(config);
  const fs::path dir(a.out);
  ensure_dir(dir);

  std::ostringstream trace;
  write_records(trace, generated.records);
  write_file(dir / "trace.jsonl", trace.str());
  write_file(dir / "ground_truth.json", to_json(generated.truth).dump(2) + "\n");

  ordered_json snapshot = to_json(config);
  snapshot["run_id"] = generated.truth.run_id;
  Manifest manifest("synth", snapshot);
  if (!a.config.empty()) manifest.input(a.config);
  manifest.output(dir, "trace.jsonl");
  manifest.output(dir, "ground_truth.json");
  manifest.write(dir);

  out << "synth: " << generated.records.size() << " records, run " << generated.truth.run_id
      << " -> " << dir.string() << "\n";
  return kSuccess;
}

// --------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string in;
  std::string out;
  std::string catalog;
  std::string config;
  int utc_offset = 0;
  CLI::Option* offset_opt = nullptr;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const AnalysisConfig cfg = load_analysis_config(a.config, a.offset_opt, a.utc_offset);
  RecordLoad load = read_records(fs::path(a.in));
  CatalogLoad catalog;
  if (!a.catalog.empty()) catalog = read_catalog(fs::path(a.catalog));

  if (load.records.empty()) throw Exit{kEmptyResult, "no analyzable records"};

  const AnalysisResult result = analyze(load.records, catalog.catalog, cfg);

  const fs::path dir(a.out);
  ensure_dir(dir);

  std::ostringstream records;
  write_records(records, load.records);
  write_file(dir / "records.jsonl", records.str());

  const HandoverIndex index(result.handovers);
  std::ostringstream verdicts;
  for (const AnalyzedRecord& r : result.records) {
    ordered_json j;
    j["record_id"] = r.record.record_id;
    j["user_id"] = r.record.user_id;
    j["timestamp"] = r.record.timestamp;
    j["verdict"] = to_json(r.verdict);
    j["handover_nearby"] = index.nearby(r.record.user_id, r.record.timestamp, cfg.handover_max_gap_ms);
    j["congestion"] = r.assessment ? to_json(*r.assessment) : ordered_json(nullptr);
    j["congestion_error"] = r.congestion_error ? ordered_json(*r.congestion_error) : ordered_json(nullptr);
    verdicts << j.dump() << '\n';
  }
  write_file(dir / "verdicts.jsonl", verdicts.str());

  std::ostringstream handovers;
  for (const HandoverEvent& e : result.handovers) handovers << to_json(e).dump() << '\n';
  write_file(dir / "handovers.jsonl", handovers.str());

  auto issues = [](const std::vector<IngestIssue>& list) {
    ordered_json arr = ordered_json::array();
    for (const auto& i : list) arr.push_back({{"line", i.line}, {"reason", i.reason}});
    return arr;
  };
  ordered_json ingest;
  ingest["records"] = {{"accepted", load.report.accepted},
                       {"rejected", load.report.rejected},
                       {"rejections", issues(load.report.rejections)},
                       {"warnings", issues(load.report.warnings)}};
  ingest["catalog"] = {{"accepted", catalog.report.accepted},
                       {"rejected", catalog.report.rejected},
                       {"rejections", issues(catalog.report.rejections)},
                       {"warnings", issues(catalog.report.warnings)}};
  write_file(dir / "ingest_report.json", ingest.dump(2) + "\n");

  Manifest manifest("analyze", to_json(cfg));
  manifest.input(a.in);
  if (!a.catalog.empty()) manifest.input(a.catalog);
  if (!a.config.empty()) manifest.input(a.config);
  for (const char* name : {"records.jsonl", "verdicts.jsonl", "handovers.jsonl", "ingest_report.json"}) {
    manifest.output(dir, name);
  }
  manifest.write(dir);

  out << "analyze: " << load.report.accepted << " accepted, " << load.report.rejected
      << " rejected, " << result.handovers.size() << " handovers -> " << dir.string() << "\n";
  return kSuccess;
}

// ---------------------------------------------------------------- report

struct ReportArgs {
  std::string in;
  std::string out;
  std::string report = "all";
  std::string key = "base-station";
  std::string subscription = "4g";
  std::string config;
  bool include_artificial = false;
  int utc_offset = 0;
  CLI::Option* offset_opt = nullptr;
};

int cmd_report(const ReportArgs& a, std::ostream& out) {
  const auto& names = report_names();
  std::vector<std::string> selected;
  if (a.report == "all") {
    selected = names;
  } else if (std::find(names.begin(), names.end(), a.report) != names.end()) {
    selected = {a.report};
  } else {
    std::string valid;
    for (const auto& n : names) valid += n + "|";
    throw Exit{kUsageError, "unknown report '" + a.report + "'; valid: " + valid + "all"};
  }

  HourlyKey key = HourlyKey::BaseStation;
  if (a.key == "operator") {
    key = HourlyKey::Operator;
  } else if (a.key != "base-station") {
    throw Exit{kUsageError, "--key must be base-station or operator"};
  }
  const auto subscription = parse_group(a.subscription);
  if (!subscription || (*subscription != TechnologyGroup::G3 && *subscription != TechnologyGroup::G4)) {
    throw Exit{kUsageError, "--subscription must be 3g or 4g"};
  }

  const AnalysisConfig cfg = load_analysis_config(a.config, a.offset_opt, a.utc_offset);
  const fs::path in_dir(a.in);
  const fs::path records_path = in_dir / "records.jsonl";
  const fs::path verdicts_path = in_dir / "verdicts.jsonl";
  const fs::path handovers_path = in_dir / "handovers.jsonl";

  RecordLoad load = read_records(records_path);
  std::map<std::string, json> verdict_by_id;
  for (json& line : read_json_lines(verdicts_path)) {
    std::string id = line.at("record_id").get<std::string>();
    verdict_by_id[std::move(id)] = std::move(line);
  }
  std::vector<HandoverEvent> events;
  for (const json& line : read_json_lines(handovers_path)) events.push_back(handover_from_json(line));

  if (load.records.empty()) throw Exit{kEmptyResult, "no analyzable records"};

  std::vector<MeasurementRecord> throughput_records;
  std::vector<PooledRecord> pooled;
  for (const MeasurementRecord& r : load.records) {
    const auto it = verdict_by_id.find(r.record_id);
    if (it == verdict_by_id.end()) throw IoError("no verdict for record " + r.record_id);
    const LimitingFactorVerdict verdict = verdict_from_json(it->second.at("verdict"));
    if (verdict.artificial && !a.include_artificial) continue;
    throughput_records.push_back(r);
    if (verdict.congestion_pool) pooled.push_back({r.timestamp, r.region_tag, *verdict.congestion_pool});
  }

  const fs::path dir(a.out);
  ensure_dir(dir);
  ordered_json snapshot = to_json(cfg);
  snapshot["report"] = a.report;
  snapshot["key"] = a.key;
  snapshot["subscription"] = a.subscription;
  snapshot["include_artificial"] = a.include_artificial;
  Manifest manifest("report", snapshot);
  manifest.input(records_path);
  manifest.input(verdicts_path);
  manifest.input(handovers_path);
  if (!a.config.empty()) manifest.input(a.config);

  const std::vector<Session> sessions = build_sessions(load.records);
  for (const std::string& name : selected) {
    RenderedReport rendered;
    if (name == "histogram") {
      rendered = render(throughput_histogram(throughput_records, cfg));
    } else if (name == "hourly") {
      rendered = render(hourly_profile(throughput_records, key, cfg));
    } else if (name == "trend") {
      rendered = render(quarterly_trend(throughput_records, cfg));
    } else if (name == "operators") {
      rendered = render(operator_summary(throughput_records));
    } else if (name == "pools") {
      rendered = render(pool_trend(pooled, cfg));
    } else if (name == "signal") {
      rendered = render(signal_correlation(throughput_records, cfg));
    } else if (name == "camping") {
      std::vector<CampingStats> stats;
      for (const Session& s : sessions) stats.push_back(camping_stats(s, *subscription));
      rendered = render(stats);
    } else if (name == "handovers") {
      HandoverReport report;
      report.events = events;
      report.impact = handover_impact(events);
      report.downgrade_impact = handover_impact(downgrade_events(events));
      report.operators = compare_operators(sessions, events);
      rendered = render(report);
    }
    write_file(dir / (name + ".json"), rendered.json);
    write_file(dir / (name + ".csv"), rendered.csv);
    manifest.output(dir, name + ".json");
    manifest.output(dir, name + ".csv");
  }
  manifest.write(dir);

  out << "report: " << selected.size() << " report(s), " << throughput_records.size() << " of "
      << load.records.size() << " records used -> " << dir.string() << "\n";
  return kSuccess;
}

}  // namespace

const std::vector<std::string>& report_names() {
  static const std::vector<std::string> names{"histogram", "hourly", "trend", "operators",
                                              "pools",     "signal", "camping", "handovers"};
  return names;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw IoError("sha256 initialisation failed");
  }
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mobile network measurement analytics"};
  app.name("mobnet");
  app.require_subcommand(1);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic trace with planted ground truth");
  auto& so = synth_args.opts;
  so["--scenario"] = synth->add_option("--scenario", synth_args.scenario, "stationary24h or commute");
  so["--seed"] = synth->add_option("--seed", synth_args.seed, "Generator seed");
  synth->add_option("--out", synth_args.out, "Output directory")->required();
  synth->add_option("--config", synth_args.config, "Scenario config JSON");
  so["--diurnal-dip"] = synth->add_option("--diurnal-dip", synth_args.diurnal_dip);
  so["--base-capacity-kbps"] = synth->add_option("--base-capacity-kbps", synth_args.base_capacity);
  so["--records-per-hour"] = synth->add_option("--records-per-hour", synth_args.records_per_hour);
  so["--samples-per-record"] = synth->add_option("--samples-per-record", synth_args.samples_per_record);
  so["--sample-interval-ms"] = synth->add_option("--sample-interval-ms", synth_args.sample_interval_ms);
  so["--spike-rate"] = synth->add_option("--spike-rate", synth_args.spike_rate);
  so["--noise-cv"] = synth->add_option("--noise-cv", synth_args.noise_cv);
  so["--utc-offset-minutes"] = synth->add_option("--utc-offset-minutes", synth_args.utc_offset);

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Attribute, classify and detect handovers");
  analyze_cmd->add_option("--in", analyze_args.in, "Records file (JSON Lines)")->required();
  analyze_cmd->add_option("--out", analyze_args.out, "Output directory")->required();
  analyze_cmd->add_option("--catalog", analyze_args.catalog, "Capability catalog CSV");
  analyze_cmd->add_option("--config", analyze_args.config, "Analysis config JSON");
  analyze_args.offset_opt =
      analyze_cmd->add_option("--utc-offset-minutes", analyze_args.utc_offset, "Local time offset");

  ReportArgs report_args;
  auto* report_cmd = app.add_subcommand("report", "Aggregate reports from analyze output");
  report_cmd->add_option("--in", report_args.in, "analyze output directory")->required();
  report_cmd->add_option("--out", report_args.out, "Output directory")->required();
  report_cmd->add_option("--report", report_args.report, "Report name or all");
  report_cmd->add_option("--key", report_args.key, "hourly key: base-station or operator");
  report_cmd->add_option("--subscription", report_args.subscription, "camping subscription: 3g or 4g");
  report_cmd->add_option("--config", report_args.config, "Analysis config JSON");
  report_cmd->add_flag("--include-artificial", report_args.include_artificial,
                       "Keep records limited by device, technology or plan caps");
  report_args.offset_opt =
      report_cmd->add_option("--utc-offset-minutes", report_args.utc_offset, "Local time offset");

  std::vector<std::string> argv_store{"mobnet"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "mobnet: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (synth->parsed()) return cmd_synth(synth_args, out);
    if (analyze_cmd->parsed()) return cmd_analyze(analyze_args, out);
    if (report_cmd->parsed()) return cmd_report(report_args, out);
  } catch (const Exit& e) {
    err << "mobnet: " << e.message << "\n";
    return e.code;
  } catch (const ConfigError& e) {
    err << "mobnet: " << e.what() << "\n";
    return kUsageError;
  } catch (const IoError& e) {
    err << "mobnet: " << e.what() << "\n";
    return kIoFailure;
  } catch (const nlohmann::json::exception& e) {
    err << "mobnet: malformed input: " << e.what() << "\n";
    return kIoFailure;
  } catch (const fs::filesystem_error& e) {
    err << "mobnet: " << e.what() << "\n";
    return kIoFailure;
  }
  return kUsageError;
}

}  // namespace mobnet::cli
