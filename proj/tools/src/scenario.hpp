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
#include <map>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "hjbcf/dynamics.hpp"
#include "hjbcf/metrics.hpp"
#include "hjbcf/regulation.hpp"
#include "hjbcf/simulation.hpp"
#include "hjbcf/tracking.hpp"

namespace hjbcf::cli {

enum class Method { Proposed, Sola };

std::string to_string(Method method);
Method parse_method(const std::string& text);

/// Named tracking presets; None means regulation.
enum class ReferenceKind { None, Sinusoid, FeasibleSinusoid };

std::string to_string(ReferenceKind kind);
ReferenceKind parse_reference_kind(const std::string& text);

struct ScenarioConfig {
    ExampleId example{ExampleId::I};
    int example_case{0}; // 1 or 2 for Example II, 0 otherwise
    Method method{Method::Proposed};
    Eigen::VectorXd x0;
    Eigen::MatrixXd Q0;
    Eigen::MatrixXd R;
    double gamma{1.0};
    double deadzone_eps{1e-10};
    double dt{1e-3};
    double horizon{10.0};
    ReferenceKind reference{ReferenceKind::None};
    double ref_amplitude{1.0};
    double ref_frequency{1.0};
    std::string trajectory_path{"trajectory.csv"};
    std::string metrics_path{"metrics.txt"};
    std::string plot_path; // empty: no plot

    /// Defaults for a built-in example: x0, Q0 = I, R = I, gamma, dt and T.
    /// Example II takes case 1 when example_case is 0.
    static ScenarioConfig defaults(ExampleId example, int example_case = 0);

    DynamicsModel model() const;
    CostConfig cost() const;
    IntegratorConfig integrator() const;
    std::optional<ReferenceTrajectory> reference_trajectory() const;

    /// "I", "II" or "III".
    std::string example_label() const;
    /// "Case 1" / "Case 2" for Example II, empty otherwise.
    std::string case_label() const;
    /// Table name: "Proposed method", "HJB-SOLA" or "HJI-SOLA".
    std::string method_label() const;

    /// Throws UsageError or ConfigurationError on any inconsistency.
    void validate() const;
};

/// Parses a comma-separated list of numbers.
Eigen::VectorXd parse_vector(const std::string& text);

/// Parses rows separated by ';' with comma-separated entries. A single number s
/// gives s times the identity of size `identity_dim`.
Eigen::MatrixXd parse_matrix(const std::string& text, int identity_dim);

/// Reads flat `key = value` lines ('#' starts a comment) into a map. Duplicate keys are an error.
std::map<std::string, std::string> read_key_values(std::istream& in);

/// Builds a scenario from key/value pairs: `example` and `case` select the defaults,
/// remaining keys override them. Unknown keys are an error.
ScenarioConfig scenario_from_keys(const std::map<std::string, std::string>& keys);

ScenarioConfig load_scenario(const std::string& path);

struct ScenarioResult {
    Trajectory trajectory;
    MetricsReport report;
};

/// Simulates the scenario and fills in every metric, including the median wall clock.
ScenarioResult run_scenario(const ScenarioConfig& cfg, int timing_repeats = 5);

} // namespace hjbcf::cli
