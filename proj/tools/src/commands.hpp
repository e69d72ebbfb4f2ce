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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scenario.hpp"

namespace hjbcf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitInadmissibleGamma = 3;

int cmd_run(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err, int timing_repeats = 5);

struct BenchOptions {
    std::vector<ExampleId> examples{ExampleId::I, ExampleId::II, ExampleId::III};
    std::optional<Method> method; // both when unset
    std::string json_path;
    std::string metrics_dir; // one metrics file per row when set
    int timing_repeats{5};
};

/// Runs the default scenarios and prints one comparison table per example.
std::vector<ComparisonTable> bench_tables(const BenchOptions& opts, std::ostream& err);
int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err);

/// Parses "min,max" into an interval; throws UsageError unless min < max.
std::pair<double, double> parse_interval(const std::string& text);

/// One interval per axis, or a single interval applied to every axis.
Box make_box(const std::vector<std::pair<double, double>>& axes, int state_dim);

int cmd_verify_gamma(const ScenarioConfig& cfg, const std::vector<std::pair<double, double>>& box_axes,
                     int points_per_axis, std::ostream& out, std::ostream& err);

/// Reassembles a comparison table from metrics files written by run or bench.
int cmd_table(const std::vector<std::string>& metrics_paths, const std::string& title, std::ostream& out,
              std::ostream& err);

} // namespace hjbcf::cli
