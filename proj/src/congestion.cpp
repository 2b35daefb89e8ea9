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

#include "mobnet/congestion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mobnet {

namespace {

// Upper bound on repair steps; random and adversarial series settle well
// below 2n.
constexpr std::size_t kRepairBudgetPerSample = 64;

double neighbour_mean(std::span<const double> v, std::size_t i, std::size_t half_width) {
  const std::size_t lo = i >= half_width ? i - half_width : 0;
  const std::size_t hi = std::min(v.size() - 1, i + half_width);
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t j = lo; j <= hi; ++j) {
    if (j == i) continue;
    sum += v[j];
    ++n;
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

// Violation ratio (> factor) or 0 when the sample is acceptable.
double violation(std::span<const double> v, std::size_t i, std::size_t half_width, double factor) {
  const double m = neighbour_mean(v, i, half_width);
  if (!(m > 0.0)) return 0.0;
  const double x = v[i];
  if (x > factor * m) return x / m;
  if (x < m / factor) return x > 0.0 ? m / x : std::numeric_limits<double>::infinity();
  return 0.0;
}

}  // namespace

std::string_view to_string(CongestionPool pool) {
  switch (pool) {
    case CongestionPool::LOW:
      return "LOW";
    case CongestionPool::MEDIUM:
      return "MEDIUM";
    case CongestionPool::HIGH:
      return "HIGH";
  }
  return "HIGH";
}

std::optional<CongestionPool> parse_pool(std::string_view text) {
  if (text == "LOW") return CongestionPool::LOW;
  if (text == "MEDIUM") return CongestionPool::MEDIUM;
  if (text == "HIGH") return CongestionPool::HIGH;
  return std::nullopt;
}

FilteredSeries filter_spikes(const SampleSeries& series, const AnalysisConfig& cfg) {
  FilteredSeries out{series, 0, {}};
  std::vector<double>& v = out.series.values;
  const std::size_t n = v.size();
  if (n < 2) return out;

  const auto half_width = static_cast<std::size_t>(cfg.smoothing_half_width);
  const double factor = cfg.spike_factor;

  std::vector<double> score(n);
  for (std::size_t i = 0; i < n; ++i) score[i] = violation(v, i, half_width, factor);

  std::vector<bool> replaced(n, false);
  const std::size_t budget = kRepairBudgetPerSample * n;
  for (std::size_t step = 0; step < budget; ++step) {
    std::size_t worst = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (score[i] > 0.0 && (worst == n || score[i] > score[worst])) worst = i;
    }
    if (worst == n) break;

    v[worst] = neighbour_mean(v, worst, half_width);
    replaced[worst] = true;

    const std::size_t lo = worst >= half_width ? worst - half_width : 0;
    const std::size_t hi = std::min(n - 1, worst + half_width);
    for (std::size_t j = lo; j <= hi; ++j) score[j] = violation(v, j, half_width, factor);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (replaced[i]) out.replaced_indices.push_back(i);
  }
  out.spikes_replaced = out.replaced_indices.size();
  return out;
}

double relative_average_deviation(std::span<const double> window) {
  if (window.empty()) return 0.0;
  const double n = static_cast<double>(window.size());
  double sum = 0.0;
  for (double x : window) sum += x;
  const double mean = sum / n;
  if (mean == 0.0) return 0.0;
  double dev = 0.0;
  for (double x : window) dev += std::abs(x - mean);
  return (dev / n) / mean;
}

std::vector<WindowStats> window_stats(std::span<const double> values, const AnalysisConfig& cfg) {
  const auto size = static_cast<std::size_t>(cfg.window_size);
  if (values.size() < size) throw AnalysisError("insufficient samples");

  std::vector<WindowStats> windows;
  windows.reserve(values.size() / size);
  for (std::size_t w = 0; (w + 1) * size <= values.size(); ++w) {
    const auto window = values.subspan(w * size, size);
    double sum = 0.0;
    for (double x : window) sum += x;
    WindowStats stats;
    stats.window_index = w;
    stats.mean_kbps = sum / static_cast<double>(size);
    stats.rad = relative_average_deviation(window);
    windows.push_back(stats);
  }
  return windows;
}

std::vector<WindowStats> window_stats(const SampleSeries& series, const AnalysisConfig& cfg) {
  return window_stats(std::span<const double>(series.values), cfg);
}

void mark_slow_start(std::vector<WindowStats>& windows, const AnalysisConfig& cfg) {
  const auto forced =
      std::min(windows.size(), static_cast<std::size_t>(cfg.slow_start_min_excluded));
  for (std::size_t i = 0; i < forced; ++i) windows[i].excluded_slow_start = true;

  double reference = 0.0;
  for (std::size_t i = forced; i < windows.size(); ++i) {
    reference = std::max(reference, windows[i].mean_kbps);
  }
  const double threshold = cfg.slow_start_activation_fraction * reference;
  for (std::size_t i = forced; i < windows.size() && windows[i].mean_kbps < threshold; ++i) {
    windows[i].excluded_slow_start = true;
  }
}

UpperBound select_upper_bound(std::span<const WindowStats> windows, const AnalysisConfig& cfg) {
  const WindowStats* stable = nullptr;
  const WindowStats* scored = nullptr;
  double best_score = 0.0;
  for (const WindowStats& w : windows) {
    if (w.excluded_slow_start) continue;
    if (w.rad <= cfg.rad_stability_max) {
      if (!stable || w.mean_kbps > stable->mean_kbps ||
          (w.mean_kbps == stable->mean_kbps && w.rad < stable->rad)) {
        stable = &w;
      }
    }
    const double score = w.mean_kbps / (1.0 + w.rad);
    if (!scored || score > best_score) {
      scored = &w;
      best_score = score;
    }
  }
  const WindowStats* chosen = stable ? stable : scored;
  if (!chosen) throw AnalysisError("no eligible window");
  return {chosen->mean_kbps, chosen->window_index};
}

double window_mape(std::span<const double> window, double upper_bound_kbps) {
  if (window.empty()) return 0.0;
  double total = 0.0;
  for (double x : window) {
    if (upper_bound_kbps > 0.0) {
      total += std::abs(upper_bound_kbps - x) / upper_bound_kbps;
    } else if (x != upper_bound_kbps) {
      total += 1.0;
    }
  }
  return 100.0 * total / static_cast<double>(window.size());
}

CongestionPool pool_for(double overall_mape_pct, const AnalysisConfig& cfg) {
  if (overall_mape_pct <= cfg.mape_low_max) return CongestionPool::LOW;
  if (overall_mape_pct <= cfg.mape_medium_max) return CongestionPool::MEDIUM;
  return CongestionPool::HIGH;
}

CongestionAssessment classify(const SampleSeries& series, const AnalysisConfig& cfg) {
  const auto size = static_cast<std::size_t>(cfg.window_size);
  const auto needed = (static_cast<std::size_t>(cfg.slow_start_min_excluded) + 1) * size;
  if (series.values.size() < needed) throw AnalysisError("insufficient samples");

  FilteredSeries filtered = filter_spikes(series, cfg);
  const std::span<const double> values(filtered.series.values);

  CongestionAssessment result;
  result.spikes_replaced = filtered.spikes_replaced;
  result.windows = window_stats(values, cfg);
  mark_slow_start(result.windows, cfg);

  const UpperBound ub = select_upper_bound(result.windows, cfg);
  result.upper_bound_kbps = ub.kbps;
  result.upper_bound_window = ub.window_index;

  double mape_sum = 0.0;
  std::size_t counted = 0;
  for (WindowStats& w : result.windows) {
    if (w.excluded_slow_start) continue;
    w.mape_pct = window_mape(values.subspan(w.window_index * size, size), ub.kbps);
    mape_sum += *w.mape_pct;
    ++counted;
  }
  result.overall_mape_pct = mape_sum / static_cast<double>(counted);
  result.pool = pool_for(result.overall_mape_pct, cfg);
  return result;
}

}  // namespace mobnet
