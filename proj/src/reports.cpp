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

#include "mobnet/reports.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mobnet/calendar.hpp"

namespace mobnet {

namespace {

double sum_sorted(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double x : values) sum += x;
  return sum;
}

std::size_t pool_slot(CongestionPool pool) { return static_cast<std::size_t>(pool); }

}  // namespace

void ValueBag::merge(const ValueBag& other) {
  values_.insert(values_.end(), other.values_.begin(), other.values_.end());
}

std::vector<double> ValueBag::sorted() const {
  std::vector<double> out = values_;
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<double> ValueBag::mean() const {
  if (values_.empty()) return std::nullopt;
  return sum_sorted(values_) / static_cast<double>(values_.size());
}

std::optional<double> ValueBag::max() const {
  if (values_.empty()) return std::nullopt;
  return *std::max_element(values_.begin(), values_.end());
}

double quantile_inclusive(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty data");
  const double position = p * static_cast<double>(sorted.size() - 1);
  const auto lower = static_cast<std::size_t>(std::floor(position));
  if (lower + 1 >= sorted.size()) return sorted.back();
  const double frac = position - static_cast<double>(lower);
  return sorted[lower] + frac * (sorted[lower + 1] - sorted[lower]);
}

// ---------------------------------------------------------------- histogram

void HistogramAccumulator::add(const MeasurementRecord& record) {
  const auto bin = static_cast<std::int64_t>(std::floor(record.download_kbps / bin_width_));
  ++counts_[bin];
  ++total_;
  if (record.download_kbps < 1000.0) ++below_1mbps_;
}

void HistogramAccumulator::merge(const HistogramAccumulator& other) {
  for (const auto& [bin, count] : other.counts_) counts_[bin] += count;
  total_ += other.total_;
  below_1mbps_ += other.below_1mbps_;
}

Histogram HistogramAccumulator::finish() const {
  Histogram h;
  h.bin_width_kbps = bin_width_;
  h.total = total_;
  h.below_1mbps = below_1mbps_;
  if (!counts_.empty()) {
    const std::int64_t last = counts_.rbegin()->first;
    for (std::int64_t k = 0; k <= last; ++k) {
      const auto it = counts_.find(k);
      h.bins.push_back({static_cast<double>(k) * bin_width_, it == counts_.end() ? 0 : it->second});
    }
  }
  if (total_ > 0) {
    h.fraction_below_1mbps = static_cast<double>(below_1mbps_) / static_cast<double>(total_);
  }
  return h;
}

Histogram throughput_histogram(std::span<const MeasurementRecord> records,
                               const AnalysisConfig& cfg) {
  HistogramAccumulator acc(cfg.histogram_bin_kbps);
  for (const auto& r : records) acc.add(r);
  return acc.finish();
}

// ------------------------------------------------------------------- hourly

void HourlyAccumulator::add(const MeasurementRecord& record) {
  std::string key;
  if (key_ == HourlyKey::BaseStation) {
    if (!record.cell_id) {
      ++excluded_;
      return;
    }
    key = *record.cell_id;
  } else {
    key = record.network_operator;
  }
  hours_[key][local_hour(record.timestamp, cfg_.utc_offset_minutes)].add(record.download_kbps);
}

void HourlyAccumulator::merge(const HourlyAccumulator& other) {
  for (const auto& [key, hours] : other.hours_) {
    auto& mine = hours_[key];
    for (std::size_t h = 0; h < 24; ++h) mine[h].merge(hours[h]);
  }
  excluded_ += other.excluded_;
}

HourlyReport HourlyAccumulator::finish() const {
  HourlyReport report;
  report.key_kind = key_;
  report.excluded = excluded_;
  for (const auto& [key, hours] : hours_) {
    HourlyProfile p;
    p.key = key;
    double busy_sum = 0.0;
    double off_sum = 0.0;
    std::size_t busy_n = 0;
    std::size_t off_n = 0;
    for (int h = 0; h < 24; ++h) {
      const auto& bag = hours[static_cast<std::size_t>(h)];
      p.hour_counts[static_cast<std::size_t>(h)] = bag.size();
      p.hour_means[static_cast<std::size_t>(h)] = bag.mean();
      if (!bag.mean()) continue;
      if (cfg_.busy_hours.contains(h)) {
        busy_sum += *bag.mean();
        ++busy_n;
      } else {
        off_sum += *bag.mean();
        ++off_n;
      }
    }
    if (busy_n > 0) p.busy_mean = busy_sum / static_cast<double>(busy_n);
    if (off_n > 0) p.offpeak_mean = off_sum / static_cast<double>(off_n);
    if (p.busy_mean && p.offpeak_mean && *p.offpeak_mean > 0.0) {
      p.dip_fraction = 1.0 - *p.busy_mean / *p.offpeak_mean;
    }
    report.profiles.push_back(std::move(p));
  }
  return report;
}

HourlyReport hourly_profile(std::span<const MeasurementRecord> records, HourlyKey key,
                            const AnalysisConfig& cfg) {
  HourlyAccumulator acc(key, cfg);
  for (const auto& r : records) acc.add(r);
  return acc.finish();
}

// -------------------------------------------------------------------- trend

std::string network_type_of(TechnologyGroup group) {
  return group == TechnologyGroup::WLAN ? "WLAN" : "cellular";
}

void TrendAccumulator::add(const MeasurementRecord& record) {
  const auto group = group_of(record.technology);
  if (!group) {
    ++excluded_;
    return;
  }
  groups_[{*group, record.region_tag.value_or("")}]
         [quarter_label(record.timestamp, cfg_.utc_offset_minutes)]
             .add(record.download_kbps);
}

void TrendAccumulator::merge(const TrendAccumulator& other) {
  for (const auto& [key, quarters] : other.groups_) {
    auto& mine = groups_[key];
    for (const auto& [quarter, bag] : quarters) mine[quarter].merge(bag);
  }
  excluded_ += other.excluded_;
}

TrendReport TrendAccumulator::finish() const {
  TrendReport report;
  report.excluded = excluded_;
  for (const auto& [key, quarters] : groups_) {
    TrendSeries s;
    s.technology_group = std::get<0>(key);
    s.region_tag = std::get<1>(key);
    s.network_type = network_type_of(s.technology_group);
    for (const auto& [quarter, bag] : quarters) {
      s.points.push_back({quarter, *bag.mean(), *bag.max(), bag.size()});
    }
    report.series.push_back(std::move(s));
  }
  return report;
}

TrendReport quarterly_trend(std::span<const MeasurementRecord> records, const AnalysisConfig& cfg) {
  TrendAccumulator acc(cfg);
  for (const auto& r : records) acc.add(r);
  return acc.finish();
}

// ---------------------------------------------------------------- operators

void OperatorAccumulator::add(const MeasurementRecord& record) {
  by_operator_[record.network_operator].add(record.download_kbps);
}

void OperatorAccumulator::merge(const OperatorAccumulator& other) {
  for (const auto& [name, bag] : other.by_operator_) by_operator_[name].merge(bag);
}

std::vector<OperatorSummary> OperatorAccumulator::finish() const {
  std::vector<OperatorSummary> out;
  for (const auto& [name, bag] : by_operator_) {
    const std::vector<double> v = bag.sorted();
    OperatorSummary s;
    s.network_operator = name;
    s.count = v.size();
    s.min = v.front();
    s.q1 = quantile_inclusive(v, 0.25);
    s.median = quantile_inclusive(v, 0.5);
    s.q3 = quantile_inclusive(v, 0.75);
    s.max = v.back();
    s.mean = *bag.mean();
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<OperatorSummary> operator_summary(std::span<const MeasurementRecord> records) {
  OperatorAccumulator acc;
  for (const auto& r : records) acc.add(r);
  return acc.finish();
}

// -------------------------------------------------------------------- pools

void PoolTrendAccumulator::add(const PooledRecord& record) {
  Counts& c = months_[month_label(record.timestamp, cfg_.utc_offset_minutes)];
  ++c.all[pool_slot(record.pool)];
  if (record.region_tag && *record.region_tag == cfg_.urban_tag) ++c.urban[pool_slot(record.pool)];
}

void PoolTrendAccumulator::merge(const PoolTrendAccumulator& other) {
  for (const auto& [month, counts] : other.months_) {
    Counts& mine = months_[month];
    for (std::size_t i = 0; i < 3; ++i) {
      mine.all[i] += counts.all[i];
      mine.urban[i] += counts.urban[i];
    }
  }
}

PoolTrend PoolTrendAccumulator::finish() const {
  PoolTrend trend;
  trend.urban_tag = cfg_.urban_tag;
  std::size_t urban_mh = 0;
  for (const auto& [month, c] : months_) {
    PoolTrendPoint p;
    p.month = month;
    p.count = c.all[0] + c.all[1] + c.all[2];
    const auto n = static_cast<double>(p.count);
    p.fraction_low = static_cast<double>(c.all[0]) / n;
    p.fraction_medium = static_cast<double>(c.all[1]) / n;
    p.fraction_high = static_cast<double>(c.all[2]) / n;
    p.urban_count = c.urban[0] + c.urban[1] + c.urban[2];
    if (p.urban_count > 0) {
      p.urban_medium_high =
          static_cast<double>(c.urban[1] + c.urban[2]) / static_cast<double>(p.urban_count);
    }
    trend.urban_total += p.urban_count;
    urban_mh += c.urban[1] + c.urban[2];
    trend.points.push_back(std::move(p));
  }
  if (trend.urban_total > 0) {
    trend.urban_medium_high =
        static_cast<double>(urban_mh) / static_cast<double>(trend.urban_total);
  }
  return trend;
}

PoolTrend pool_trend(std::span<const PooledRecord> records, const AnalysisConfig& cfg) {
  PoolTrendAccumulator acc(cfg);
  for (const auto& r : records) acc.add(r);
  return acc.finish();
}

// ------------------------------------------------------------------- signal

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  if (x.size() < 2) return std::nullopt;
  const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
  const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
  if (*xmin == *xmax || *ymin == *ymax) return std::nullopt;

  const auto n = static_cast<double>(x.size());
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

void SignalAccumulator::add(const MeasurementRecord& record) {
  if (!record.signal_dbm) {
    ++excluded_;
    return;
  }
  points_.emplace_back(*record.signal_dbm, record.download_kbps);
}

void SignalAccumulator::merge(const SignalAccumulator& other) {
  points_.insert(points_.end(), other.points_.begin(), other.points_.end());
  excluded_ += other.excluded_;
}

SignalCorrelation SignalAccumulator::finish() const {
  SignalCorrelation out;
  out.excluded = excluded_;
  out.count = points_.size();

  auto points = points_;
  std::sort(points.begin(), points.end());
  std::map<std::int64_t, ValueBag> bins;
  std::vector<double> x;
  std::vector<double> y;
  x.reserve(points.size());
  y.reserve(points.size());
  for (const auto& [dbm, kbps] : points) {
    bins[static_cast<std::int64_t>(std::floor(dbm / bin_width_))].add(kbps);
    x.push_back(dbm);
    y.push_back(kbps);
  }
  for (const auto& [k, bag] : bins) {
    out.bins.push_back({static_cast<double>(k) * bin_width_, *bag.mean(), bag.size()});
  }
  out.pearson_r = pearson(x, y);
  return out;
}

SignalCorrelation signal_correlation(std::span<const MeasurementRecord> records,
                                     const AnalysisConfig& cfg) {
  SignalAccumulator acc(cfg.signal_bin_dbm);
  for (const auto& r : records) acc.add(r);
  return acc.finish();
}

}  // namespace mobnet
