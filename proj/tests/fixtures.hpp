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

#include <string>
#include <vector>

#include "mobnet/model.hpp"

namespace fixture {

inline mobnet::MeasurementRecord record(std::string id, std::string user, std::int64_t ts,
                                        double kbps) {
  mobnet::MeasurementRecord r;
  r.record_id = std::move(id);
  r.user_id = std::move(user);
  r.timestamp = ts;
  r.download_kbps = kbps;
  r.upload_kbps = kbps / 4;
  r.manufacturer = "Acme";
  r.model = "A1";
  r.os_name = "Android";
  r.os_version = "6.0";
  r.network_operator = "OperatorA";
  r.subscriber_operator = "OperatorA";
  r.technology = mobnet::RadioTechnology::HSPA;
  return r;
}

// Caps keyed to record(): Acme/A1 on HSPA, OperatorA plan "P1". Zero omits.
inline mobnet::CapabilityCatalog catalog(double tech, double device, double plan) {
  mobnet::CapabilityCatalog c;
  if (tech > 0) c.tech_caps[mobnet::RadioTechnology::HSPA] = tech;
  if (device > 0) c.device_caps[{"Acme", "A1", mobnet::RadioTechnology::HSPA}] = device;
  if (plan > 0) c.plan_caps[{"OperatorA", "P1"}] = plan;
  return c;
}

// Slow-start window at 400, one flat window at 1024, then `deviated` windows
// at 1024(1 - ratio). Dyadic values keep the overall MAPE exact.
inline mobnet::SampleSeries boundary_series(double ratio, int deviated, int window = 10) {
  mobnet::SampleSeries s;
  s.interval_ms = 100;
  s.values.assign(static_cast<std::size_t>(window), 400.0);
  s.values.insert(s.values.end(), static_cast<std::size_t>(window), 1024.0);
  s.values.insert(s.values.end(), static_cast<std::size_t>(window * deviated), 1024.0 * (1.0 - ratio));
  return s;
}

// 2015-06-01 00:00 at UTC+05:30.
inline constexpr std::int64_t kMidnightIst = 1433097000000;
inline constexpr std::int64_t kHourMs = 3600000;

}  // namespace fixture
