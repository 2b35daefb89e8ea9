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
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "mobnet/model.hpp"

namespace mobnet {

/// Raised when a series cannot be assessed ("insufficient samples",
/// "no eligible window").
class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CongestionPool { LOW, MEDIUM, HIGH };

std::string_view to_string(CongestionPool pool);
std::optional<CongestionPool> parse_pool(std::string_view text);

struct WindowStats {
  std::size_t window_index = 0;
  double mean_kbps = 0.0;
  double rad = 0.0;
  std::optional<double> mape_pct;  // absent for slow-start windows
  bool excluded_slow_start = false;

  bool operator==(const WindowStats&) const = default;
};

struct CongestionAssessment {
  std::vector<WindowStats> windows;
  double upper_bound_kbps = 0.0;
  std::size_t upper_bound_window = 0;
  double overall_mape_pct = 0.0;
  CongestionPool pool = CongestionPool::LOW;
  std::size_t spikes_replaced = 0;

  bool operator==(const CongestionAssessment&) const = default;
};

struct FilteredSeries {
  SampleSeries series;
  std::size_t spikes_replaced = 0;
  std::vector<std::size_t> replaced_indices;  // ascending
};

/// Replaces reordering spikes by the mean of their neighbours.
///
/// A sample violates when, with m the mean of the up-to-2*half_width
/// neighbours excluding itself (truncated at the edges) and m > 0, it lies
/// above spike_factor*m or below m/spike_factor. The worst violator (largest
/// ratio, lowest index on ties) is replaced by m and neighbourhood scores are
/// refreshed; this repeats until no sample violates. Repairing the worst
/// outlier first keeps a spike from dragging its clean neighbours into
/// violation, and the fixpoint makes the filter idempotent.
FilteredSeries filter_spikes(const SampleSeries& series, const AnalysisConfig& cfg);

/// Mean and RAD of consecutive non-overlapping windows of cfg.window_size
/// samples; a trailing partial window is dropped. mape_pct is left unset.
std::vector<WindowStats> window_stats(std::span<const double> values, const AnalysisConfig& cfg);
std::vector<WindowStats> window_stats(const SampleSeries& series, const AnalysisConfig& cfg);

/// Mean absolute deviation over mean; 0 for an all-zero window.
double relative_average_deviation(std::span<const double> window);

/// Flags the leading slow-start windows in place: the first
/// slow_start_min_excluded always, then consecutive windows whose mean is
/// below slow_start_activation_fraction times the largest mean among the
/// windows that are not force-excluded.
void mark_slow_start(std::vector<WindowStats>& windows, const AnalysisConfig& cfg);

struct UpperBound {
  double kbps = 0.0;
  std::size_t window_index = 0;

  bool operator==(const UpperBound&) const = default;
};

/// Among non-slow-start windows with rad <= rad_stability_max, the highest
/// mean (ties: lower rad, then lower index). With no stable window, maximises
/// mean/(1+rad) (ties: lower index).
UpperBound select_upper_bound(std::span<const WindowStats> windows, const AnalysisConfig& cfg);

/// 100/n * sum |ub - x| / ub. When ub == 0 each nonzero sample counts as a
/// 100% deviation.
double window_mape(std::span<const double> window, double upper_bound_kbps);

/// LOW = [0, low], MEDIUM = (low, medium], HIGH = (medium, inf).
CongestionPool pool_for(double overall_mape_pct, const AnalysisConfig& cfg);

/// filter_spikes -> window_stats -> mark_slow_start -> select_upper_bound ->
/// per-window MAPE -> mean MAPE over non-slow-start windows -> pool.
CongestionAssessment classify(const SampleSeries& series, const AnalysisConfig& cfg);

}  // namespace mobnet
