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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "mobnet/congestion.hpp"
#include "mobnet/model.hpp"

namespace mobnet {

// Every report below is built by an accumulator with add/merge/finish. Sums
// are taken over sorted values at finish, so merging partial accumulators in
// any grouping or order gives bit-identical results to a single pass.

/// Multiset of doubles with order-independent exact-repeatable mean.
class ValueBag {
 public:
  void add(double x) { values_.push_back(x); }
  void merge(const ValueBag& other);
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  /// Values sorted ascending.
  std::vector<double> sorted() const;
  std::optional<double> mean() const;
  std::optional<double> max() const;

 private:
  std::vector<double> values_;
};

/// Inclusive linear-interpolation quantile (position p*(n-1) in the sorted
/// data, interpolated between neighbours). `sorted` must be ascending and
/// non-empty; p in [0,1].
double quantile_inclusive(std::span<const double> sorted, double p);

// ---------------------------------------------------------------- histogram

struct HistogramBin {
  double lower_edge_kbps = 0.0;
  std::size_t count = 0;
};

struct Histogram {
  double bin_width_kbps = 0.0;
  std::vector<HistogramBin> bins;  // consecutive edges from 0, zero-count bins kept
  std::size_t total = 0;
  std::size_t below_1mbps = 0;
  std::optional<double> fraction_below_1mbps;
};

class HistogramAccumulator {
 public:
  explicit HistogramAccumulator(double bin_width_kbps) : bin_width_(bin_width_kbps) {}
  void add(const MeasurementRecord& record);
  void merge(const HistogramAccumulator& other);
  Histogram finish() const;

 private:
  double bin_width_;
  std::map<std::int64_t, std::size_t> counts_;
  std::size_t total_ = 0;
  std::size_t below_1mbps_ = 0;
};

Histogram throughput_histogram(std::span<const MeasurementRecord> records,
                               const AnalysisConfig& cfg);

// ------------------------------------------------------------------- hourly

enum class HourlyKey { BaseStation, Operator };

struct HourlyProfile {
  std::string key;
  std::array<std::optional<double>, 24> hour_means{};
  std::array<std::size_t, 24> hour_counts{};
  // Averages of the available hourly means, each hour weighted equally.
  std::optional<double> busy_mean;
  std::optional<double> offpeak_mean;
  std::optional<double> dip_fraction;  // 1 - busy/offpeak, needs offpeak > 0
};

struct HourlyReport {
  HourlyKey key_kind = HourlyKey::BaseStation;
  std::vector<HourlyProfile> profiles;  // ordered by key
  std::size_t excluded = 0;             // records lacking the key (no cell_id)
};

class HourlyAccumulator {
 public:
  HourlyAccumulator(HourlyKey key, const AnalysisConfig& cfg) : key_(key), cfg_(cfg) {}
  void add(const MeasurementRecord& record);
  void merge(const HourlyAccumulator& other);
  HourlyReport finish() const;

 private:
  HourlyKey key_;
  AnalysisConfig cfg_;
  std::map<std::string, std::array<ValueBag, 24>> hours_;
  std::size_t excluded_ = 0;
};

HourlyReport hourly_profile(std::span<const MeasurementRecord> records, HourlyKey key,
                            const AnalysisConfig& cfg);

// -------------------------------------------------------------------- trend

struct TrendPoint {
  std::string quarter;  // "YYYY-Qn"
  double mean_kbps = 0.0;
  double max_kbps = 0.0;
  std::size_t count = 0;
};

struct TrendSeries {
  TechnologyGroup technology_group = TechnologyGroup::G3;
  std::string region_tag;    // empty when the records carry none
  std::string network_type;  // "cellular" or "WLAN"
  std::vector<TrendPoint> points;
};

struct TrendReport {
  std::vector<TrendSeries> series;
  std::size_t excluded = 0;  // UNKNOWN technology
};

std::string network_type_of(TechnologyGroup group);

class TrendAccumulator {
 public:
  explicit TrendAccumulator(const AnalysisConfig& cfg) : cfg_(cfg) {}
  void add(const MeasurementRecord& record);
  void merge(const TrendAccumulator& other);
  TrendReport finish() const;

 private:
  using Key = std::tuple<TechnologyGroup, std::string>;
  AnalysisConfig cfg_;
  std::map<Key, std::map<std::string, ValueBag>> groups_;
  std::size_t excluded_ = 0;
};

TrendReport quarterly_trend(std::span<const MeasurementRecord> records, const AnalysisConfig& cfg);

// ---------------------------------------------------------------- operators

struct OperatorSummary {
  std::string network_operator;
  std::size_t count = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

class OperatorAccumulator {
 public:
  void add(const MeasurementRecord& record);
  void merge(const OperatorAccumulator& other);
  std::vector<OperatorSummary> finish() const;

 private:
  std::map<std::string, ValueBag> by_operator_;
};

std::vector<OperatorSummary> operator_summary(std::span<const MeasurementRecord> records);

// -------------------------------------------------------------------- pools

struct PooledRecord {
  std::int64_t timestamp = 0;
  std::optional<std::string> region_tag;
  CongestionPool pool = CongestionPool::LOW;
};

struct PoolTrendPoint {
  std::string month;  // "YYYY-MM"
  double fraction_low = 0.0;
  double fraction_medium = 0.0;
  double fraction_high = 0.0;
  std::size_t count = 0;
  std::size_t urban_count = 0;
  std::optional<double> urban_medium_high;
};

struct PoolTrend {
  std::string urban_tag;
  std::vector<PoolTrendPoint> points;
  std::size_t urban_total = 0;
  std::optional<double> urban_medium_high;  // across all months
};

class PoolTrendAccumulator {
 public:
  explicit PoolTrendAccumulator(const AnalysisConfig& cfg) : cfg_(cfg) {}
  void add(const PooledRecord& record);
  void merge(const PoolTrendAccumulator& other);
  PoolTrend finish() const;

 private:
  struct Counts {
    std::array<std::size_t, 3> all{};
    std::array<std::size_t, 3> urban{};
  };
  AnalysisConfig cfg_;
  std::map<std::string, Counts> months_;
};

PoolTrend pool_trend(std::span<const PooledRecord> records, const AnalysisConfig& cfg);

// ------------------------------------------------------------------- signal

struct SignalBin {
  double lower_edge_dbm = 0.0;
  double mean_kbps = 0.0;
  std::size_t count = 0;
};

struct SignalCorrelation {
  std::vector<SignalBin> bins;  // ascending edges, non-empty bins only
  std::optional<double> pearson_r;
  std::size_t count = 0;
  std::size_t excluded = 0;  // records without signal_dbm
};

/// Pearson correlation; absent when either variable is constant or fewer
/// than two points are given.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

class SignalAccumulator {
 public:
  explicit SignalAccumulator(double bin_width_dbm) : bin_width_(bin_width_dbm) {}
  void add(const MeasurementRecord& record);
  void merge(const SignalAccumulator& other);
  SignalCorrelation finish() const;

 private:
  double bin_width_;
  std::vector<std::pair<double, double>> points_;  // (dbm, kbps)
  std::size_t excluded_ = 0;
};

SignalCorrelation signal_correlation(std::span<const MeasurementRecord> records,
                                     const AnalysisConfig& cfg);

}  // namespace mobnet
