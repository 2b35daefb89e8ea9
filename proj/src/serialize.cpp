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

#include "mobnet/serialize.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mobnet {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

template <typename T>
ordered_json opt(const std::optional<T>& value) {
  return value ? ordered_json(*value) : ordered_json(nullptr);
}

std::string opt_cell(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string{};
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

template <typename T>
std::optional<T> opt_from(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

RadioTechnology tech_from(const json& j, const char* key) {
  return parse_technology(j.at(key).get<std::string>()).value_or(RadioTechnology::UNKNOWN);
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

std::string csv_cell(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

RenderedReport render(const Histogram& h) {
  ordered_json j;
  j["report"] = "histogram";
  j["bin_width_kbps"] = h.bin_width_kbps;
  j["total"] = h.total;
  j["below_1mbps"] = h.below_1mbps;
  j["fraction_below_1mbps"] = opt(h.fraction_below_1mbps);
  j["bins"] = ordered_json::array();
  std::ostringstream csv;
  csv << "lower_edge_kbps,upper_edge_kbps,count,fraction\n";
  for (const auto& b : h.bins) {
    j["bins"].push_back({{"lower_edge_kbps", b.lower_edge_kbps}, {"count", b.count}});
    const double fraction =
        h.total ? static_cast<double>(b.count) / static_cast<double>(h.total) : 0.0;
    csv << format_number(b.lower_edge_kbps) << ',' << format_number(b.lower_edge_kbps + h.bin_width_kbps)
        << ',' << b.count << ',' << format_number(fraction) << '\n';
  }
  return {dump(j), csv.str()};
}

RenderedReport render(const HourlyReport& r) {
  ordered_json j;
  j["report"] = "hourly";
  j["key"] = r.key_kind == HourlyKey::BaseStation ? "base-station" : "operator";
  j["excluded"] = r.excluded;
  j["profiles"] = ordered_json::array();
  std::ostringstream csv;
  csv << "key,hour,mean_kbps,count\n";
  for (const auto& p : r.profiles) {
    ordered_json pj;
    pj["key"] = p.key;
    pj["hour_means"] = ordered_json::array();
    pj["hour_counts"] = ordered_json::array();
    for (std::size_t h = 0; h < 24; ++h) {
      pj["hour_means"].push_back(opt(p.hour_means[h]));
      pj["hour_counts"].push_back(p.hour_counts[h]);
      csv << csv_cell(p.key) << ',' << h << ',' << opt_cell(p.hour_means[h]) << ','
          << p.hour_counts[h] << '\n';
    }
    pj["busy_mean"] = opt(p.busy_mean);
    pj["offpeak_mean"] = opt(p.offpeak_mean);
    pj["dip_fraction"] = opt(p.dip_fraction);
    j["profiles"].push_back(std::move(pj));
  }
  return {dump(j), csv.str()};
}

RenderedReport render(const TrendReport& r) {
  ordered_json j;
  j["report"] = "trend";
  j["excluded"] = r.excluded;
  j["series"] = ordered_json::array();
  std::ostringstream csv;
  csv << "technology_group,region_tag,network_type,quarter,mean_kbps,max_kbps,count\n";
  for (const auto& s : r.series) {
    ordered_json sj;
    sj["technology_group"] = std::string(to_string(s.technology_group));
    sj["region_tag"] = s.region_tag;
    sj["network_type"] = s.network_type;
    sj["points"] = ordered_json::array();
    for (const auto& p : s.points) {
      sj["points"].push_back({{"quarter", p.quarter},
                              {"mean_kbps", p.mean_kbps},
                              {"max_kbps", p.max_kbps},
                              {"count", p.count}});
      csv << to_string(s.technology_group) << ',' << csv_cell(s.region_tag) << ','
          << s.network_type << ',' << p.quarter << ',' << format_number(p.mean_kbps) << ','
          << format_number(p.max_kbps) << ',' << p.count << '\n';
    }
    j["series"].push_back(std::move(sj));
  }
  return {dump(j), csv.str()};
}

RenderedReport render(const std::vector<OperatorSummary>& r) {
  ordered_json j;
  j["report"] = "operators";
  j["quartile_method"] = "inclusive linear interpolation";
  j["operators"] = ordered_json::array();
  std::ostringstream csv;
  csv << "network_operator,count,min_kbps,q1_kbps,median_kbps,q3_kbps,max_kbps,mean_kbps\n";
  for (const auto& s : r) {
    j["operators"].push_back({{"network_operator", s.network_operator},
                              {"count", s.count},
                              {"min", s.min},
                              {"q1", s.q1},
                              {"median", s.median},
                              {"q3", s.q3},
                              {"max", s.max},
                              {"mean", s.mean}});
    csv << csv_cell(s.network_operator) << ',' << s.count << ',' << format_number(s.min) << ','
        << format_number(s.q1) << ',' << format_number(s.median) << ',' << format_number(s.q3)
        << ',' << format_number(s.max) << ',' << format_number(s.mean) << '\n';
  }
  return {dump(j), csv.str()};
}

RenderedReport render(const PoolTrend& r) {
  ordered_json j;
  j["report"] = "pools";
  j["urban_tag"] = r.urban_tag;
  j["urban_total"] = r.urban_total;
  j["urban_medium_high"] = opt(r.urban_medium_high);
  j["points"] = ordered_json::array();
  std::ostringstream csv;
  csv << "month,fraction_low,fraction_medium,fraction_high,count,urban_count,urban_medium_high\n";
  for (const auto& p : r.points) {
    j["points"].push_back({{"month", p.month},
                           {"fraction_low", p.fraction_low},
                           {"fraction_medium", p.fraction_medium},
                           {"fraction_high", p.fraction_high},
                           {"count", p.count},
                           {"urban_count", p.urban_count},
                           {"urban_medium_high", opt(p.urban_medium_high)}});
    csv << p.month << ',' << format_number(p.fraction_low) << ','
        << format_number(p.fraction_medium) << ',' << format_number(p.fraction_high) << ','
        << p.count << ',' << p.urban_count << ',' << opt_cell(p.urban_medium_high) << '\n';
  }
  return {dump(j), csv.str()};
}

RenderedReport render(const SignalCorrelation& r) {
  ordered_json j;
  j["report"] = "signal";
  j["count"] = r.count;
  j["excluded"] = r.excluded;
  j["pearson_r"] = opt(r.pearson_r);
  j["bins"] = ordered_json::array();
  std::ostringstream csv;
  csv << "lower_edge_dbm,mean_kbps,count\n";
  for (const auto& b : r.bins) {
    j["bins"].push_back(
        {{"lower_edge_dbm", b.lower_edge_dbm}, {"mean_kbps", b.mean_kbps}, {"count", b.count}});
    csv << format_number(b.lower_edge_dbm) << ',' << format_number(b.mean_kbps) << ',' << b.count
        << '\n';
  }
  return {dump(j), csv.str()};
}

RenderedReport render(const std::vector<CampingStats>& r) {
  ordered_json j;
  j["report"] = "camping";
  j["sessions"] = ordered_json::array();
  std::ostringstream csv;
  csv << "user_id,subscriber_operator,subscription_group,total,on_subscribed,on_lower,fraction_lower\n";
  for (const auto& c : r) {
    j["sessions"].push_back({{"user_id", c.user_id},
                             {"subscriber_operator", c.subscriber_operator},
                             {"subscription_group", std::string(to_string(c.subscription_group))},
                             {"total", c.total},
                             {"on_subscribed", c.on_subscribed},
                             {"on_lower", c.on_lower},
                             {"fraction_lower", c.fraction_lower}});
    csv << csv_cell(c.user_id) << ',' << csv_cell(c.subscriber_operator) << ','
        << to_string(c.subscription_group) << ',' << c.total << ',' << c.on_subscribed << ','
        << c.on_lower << ',' << format_number(c.fraction_lower) << '\n';
  }
  return {dump(j), csv.str()};
}

RenderedReport render(const HandoverReport& r) {
  ordered_json j;
  j["report"] = "handovers";
  j["impact"] = to_json(r.impact);
  j["downgrade_impact"] = to_json(r.downgrade_impact);
  j["operators"] = ordered_json::array();
  for (const auto& o : r.operators) {
    j["operators"].push_back({{"subscriber_operator", o.subscriber_operator},
                              {"records", o.records},
                              {"mean_kbps", o.mean_kbps},
                              {"mean_signal_dbm", opt(o.mean_signal_dbm)},
                              {"handovers", o.handovers},
                              {"downgrades", o.downgrades},
                              {"records_2g", o.records_2g},
                              {"records_3g", o.records_3g},
                              {"records_4g", o.records_4g},
                              {"relative_to_best", o.relative_to_best}});
  }
  j["events"] = ordered_json::array();
  std::ostringstream csv;
  csv << "user_id,subscriber_operator,at_ms,from_cell,to_cell,from_tech,to_tech,from_kbps,"
         "to_kbps,from_dbm,to_dbm,downgrade,gap_ms,throughput_ratio\n";
  for (const auto& e : r.events) {
    j["events"].push_back(to_json(e));
    const std::string ratio = e.from_kbps > 0.0 ? format_number(e.to_kbps / e.from_kbps) : "";
    csv << csv_cell(e.user_id) << ',' << csv_cell(e.subscriber_operator) << ',' << e.at_ms << ','
        << csv_cell(e.from_cell) << ',' << csv_cell(e.to_cell) << ',' << to_string(e.from_tech)
        << ',' << to_string(e.to_tech) << ',' << format_number(e.from_kbps) << ','
        << format_number(e.to_kbps) << ',' << opt_cell(e.from_dbm) << ',' << opt_cell(e.to_dbm)
        << ',' << (e.downgrade ? "true" : "false") << ',' << e.gap_ms << ',' << ratio
        << '\n';
  }
  return {dump(j), csv.str()};
}

ordered_json to_json(const HandoverEvent& e) {
  ordered_json j;
  j["user_id"] = e.user_id;
  j["subscriber_operator"] = e.subscriber_operator;
  j["at_ms"] = e.at_ms;
  j["from_record"] = e.from_record;
  j["to_record"] = e.to_record;
  j["from_cell"] = e.from_cell;
  j["to_cell"] = e.to_cell;
  j["from_tech"] = std::string(to_string(e.from_tech));
  j["to_tech"] = std::string(to_string(e.to_tech));
  j["from_kbps"] = e.from_kbps;
  j["to_kbps"] = e.to_kbps;
  j["from_dbm"] = opt(e.from_dbm);
  j["to_dbm"] = opt(e.to_dbm);
  j["downgrade"] = e.downgrade;
  j["gap_ms"] = e.gap_ms;
  return j;
}

HandoverEvent handover_from_json(const json& j) {
  HandoverEvent e;
  e.user_id = j.at("user_id").get<std::string>();
  e.subscriber_operator = j.at("subscriber_operator").get<std::string>();
  e.at_ms = j.at("at_ms").get<std::int64_t>();
  e.from_record = j.at("from_record").get<std::string>();
  e.to_record = j.at("to_record").get<std::string>();
  e.from_cell = j.at("from_cell").get<std::string>();
  e.to_cell = j.at("to_cell").get<std::string>();
  e.from_tech = tech_from(j, "from_tech");
  e.to_tech = tech_from(j, "to_tech");
  e.from_kbps = j.at("from_kbps").get<double>();
  e.to_kbps = j.at("to_kbps").get<double>();
  e.from_dbm = opt_from<double>(j, "from_dbm");
  e.to_dbm = opt_from<double>(j, "to_dbm");
  e.downgrade = j.at("downgrade").get<bool>();
  e.gap_ms = j.at("gap_ms").get<std::int64_t>();
  return e;
}

ordered_json to_json(const CongestionAssessment& a) {
  ordered_json j;
  j["pool"] = std::string(to_string(a.pool));
  j["overall_mape_pct"] = a.overall_mape_pct;
  j["upper_bound_kbps"] = a.upper_bound_kbps;
  j["upper_bound_window"] = a.upper_bound_window;
  j["spikes_replaced"] = a.spikes_replaced;
  j["windows"] = ordered_json::array();
  for (const auto& w : a.windows) {
    j["windows"].push_back({{"window_index", w.window_index},
                            {"mean_kbps", w.mean_kbps},
                            {"rad", w.rad},
                            {"mape_pct", opt(w.mape_pct)},
                            {"excluded_slow_start", w.excluded_slow_start}});
  }
  return j;
}

CongestionAssessment assessment_from_json(const json& j) {
  CongestionAssessment a;
  a.pool = parse_pool(j.at("pool").get<std::string>()).value();
  a.overall_mape_pct = j.at("overall_mape_pct").get<double>();
  a.upper_bound_kbps = j.at("upper_bound_kbps").get<double>();
  a.upper_bound_window = j.at("upper_bound_window").get<std::size_t>();
  a.spikes_replaced = j.at("spikes_replaced").get<std::size_t>();
  for (const auto& w : j.at("windows")) {
    WindowStats s;
    s.window_index = w.at("window_index").get<std::size_t>();
    s.mean_kbps = w.at("mean_kbps").get<double>();
    s.rad = w.at("rad").get<double>();
    s.mape_pct = opt_from<double>(w, "mape_pct");
    s.excluded_slow_start = w.at("excluded_slow_start").get<bool>();
    a.windows.push_back(s);
  }
  return a;
}

ordered_json to_json(const LimitingFactorVerdict& v) {
  ordered_json j;
  j["factor"] = std::string(to_string(v.factor));
  j["artificial"] = v.artificial;
  j["binding_upper_bound_kbps"] = opt(v.binding_upper_bound_kbps);
  j["congestion_pool"] =
      v.congestion_pool ? ordered_json(std::string(to_string(*v.congestion_pool))) : ordered_json(nullptr);
  return j;
}

LimitingFactorVerdict verdict_from_json(const json& j) {
  LimitingFactorVerdict v;
  v.factor = parse_factor(j.at("factor").get<std::string>()).value();
  v.artificial = j.at("artificial").get<bool>();
  v.binding_upper_bound_kbps = opt_from<double>(j, "binding_upper_bound_kbps");
  if (const auto pool = opt_from<std::string>(j, "congestion_pool")) {
    v.congestion_pool = parse_pool(*pool).value();
  }
  return v;
}

ordered_json to_json(const HandoverImpact& impact) {
  ordered_json j;
  j["count"] = impact.count;
  j["mean_throughput_ratio"] = opt(impact.mean_throughput_ratio);
  j["throughput_ratio_events"] = impact.throughput_ratio_events;
  j["throughput_ratio_excluded"] = impact.throughput_ratio_excluded;
  j["mean_signal_ratio"] = opt(impact.mean_signal_ratio);
  j["signal_ratio_events"] = impact.signal_ratio_events;
  j["signal_ratio_excluded"] = impact.signal_ratio_excluded;
  return j;
}

ordered_json to_json(const AnalysisConfig& c) {
  ordered_json j;
  j["smoothing_half_width"] = c.smoothing_half_width;
  j["spike_factor"] = c.spike_factor;
  j["window_size"] = c.window_size;
  j["rad_stability_max"] = c.rad_stability_max;
  j["mape_low_max"] = c.mape_low_max;
  j["mape_medium_max"] = c.mape_medium_max;
  j["slow_start_min_excluded"] = c.slow_start_min_excluded;
  j["slow_start_activation_fraction"] = c.slow_start_activation_fraction;
  j["attribution_alpha"] = c.attribution_alpha;
  j["handover_max_gap_ms"] = c.handover_max_gap_ms;
  j["busy_hours"] = {c.busy_hours.first, c.busy_hours.last};
  j["histogram_bin_kbps"] = c.histogram_bin_kbps;
  j["signal_bin_dbm"] = c.signal_bin_dbm;
  j["utc_offset_minutes"] = c.utc_offset_minutes;
  j["urban_tag"] = c.urban_tag;
  return j;
}

AnalysisConfig config_from_json(const json& j, AnalysisConfig c) {
  if (!j.is_object()) throw ConfigError("analysis config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "smoothing_half_width") c.smoothing_half_width = value.get<int>();
      else if (key == "spike_factor") c.spike_factor = value.get<double>();
      else if (key == "window_size") c.window_size = value.get<int>();
      else if (key == "rad_stability_max") c.rad_stability_max = value.get<double>();
      else if (key == "mape_low_max") c.mape_low_max = value.get<double>();
      else if (key == "mape_medium_max") c.mape_medium_max = value.get<double>();
      else if (key == "slow_start_min_excluded") c.slow_start_min_excluded = value.get<int>();
      else if (key == "slow_start_activation_fraction") c.slow_start_activation_fraction = value.get<double>();
      else if (key == "attribution_alpha") c.attribution_alpha = value.get<double>();
      else if (key == "handover_max_gap_ms") c.handover_max_gap_ms = value.get<std::int64_t>();
      else if (key == "busy_hours") {
        if (!value.is_array() || value.size() != 2) throw ConfigError("busy_hours must be [first, last]");
        c.busy_hours = {value[0].get<int>(), value[1].get<int>()};
      }
      else if (key == "histogram_bin_kbps") c.histogram_bin_kbps = value.get<double>();
      else if (key == "signal_bin_dbm") c.signal_bin_dbm = value.get<double>();
      else if (key == "utc_offset_minutes") c.utc_offset_minutes = value.get<int>();
      else if (key == "urban_tag") c.urban_tag = value.get<std::string>();
      else throw ConfigError("unknown analysis config field '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("analysis config: ") + e.what());
  }
  validate(c);
  return c;
}

}  // namespace mobnet
