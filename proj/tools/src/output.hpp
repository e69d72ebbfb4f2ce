/*
 Copyright 2026 The hjbcf Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hjbcf/metrics.hpp"
#include "hjbcf/simulation.hpp"

namespace hjbcf::cli {

/// Header `t,x1..xm,tau1..taun,V,stage_cost`, one row per sample. V = 1/2 |e|^2.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// `key = value` lines. Keys: example, case, method, status, itse, cumulative_cost,
/// convergence_time_s, wall_clock_s, dt, horizon. Not-converged entries are "N/C".
void write_metrics(std::ostream& out, const MetricsReport& report);
MetricsReport read_metrics(std::istream& in);

void write_metrics_file(const std::string& path, const MetricsReport& report);
MetricsReport read_metrics_file(const std::string& path);

/// Three stacked line charts: states, controls and V(t).
void write_svg_plot(std::ostream& out, const Trajectory& traj);

nlohmann::json to_json(const MetricsReport& report);
nlohmann::json to_json(const ComparisonTable& table);

} // namespace hjbcf::cli
