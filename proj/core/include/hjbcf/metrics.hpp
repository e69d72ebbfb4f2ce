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

#ifndef HJBCF_METRICS_HPP
#define HJBCF_METRICS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hjbcf/simulation.hpp"
#include "hjbcf/tracking.hpp"

namespace hjbcf {

enum class Quadrature { Trapezoid, Simpson };

/// Composite rule over (possibly non-uniform for trapezoid) samples.
double integrate(const std::vector<double>& times, const std::vector<double>& values,
                 Quadrature rule = Quadrature::Trapezoid);

/// Integral of t * e^T e over the recorded grid.
double itse(const Trajectory& traj, Quadrature rule = Quadrature::Trapezoid);

/// As above with e = x - x_d(t) recomputed from the states.
double itse(const Trajectory& traj, const ReferenceTrajectory& ref,
            Quadrature rule = Quadrature::Trapezoid);

/// dtau/dt by central differences, one-sided at the ends.
std::vector<Eigen::VectorXd> control_rate(const Trajectory& traj);

/**
 * Normalised cumulative cost: the integral of e^T e + tau^T tau + taudot^T taudot,
 * with identity weights whatever the controller's own Q0 and R.
 */
double cumulative_cost(const Trajectory& traj, Quadrature rule = Quadrature::Trapezoid);

inline constexpr double kConvergenceThreshold = 1e-3;

/// First sample time after which ||e|| stays below threshold up to the horizon.
std::optional<double> convergence_time(const Trajectory& traj,
                                       double threshold = kConvergenceThreshold);

/// Elapsed seconds on a monotonic clock around `run`.
double wall_clock(const std::function<void()>& run);

/// Median over `repeats` timed calls.
double median_wall_clock(const std::function<void()>& run, int repeats = 5);

enum class RunStatus { Converged, NotConverged, Diverged };

std::string to_string(RunStatus status);
RunStatus parse_run_status(const std::string& text);

/**
 * Diverged: the run blew up or ended farther from the target than it started.
 * NotConverged: finite but never settled below the threshold.
 */
RunStatus classify(const Trajectory& traj, double threshold = kConvergenceThreshold);

struct MetricsReport {
    std::string example;     // e.g. "I"
    std::string case_label;  // e.g. "Case 1"; empty when not applicable
    std::string method;      // display name, e.g. "Proposed method"
    double itse{0.0};
    double cumulative_cost{0.0};
    std::optional<double> convergence_time_s;
    double wall_clock_s{0.0};
    RunStatus status{RunStatus::Converged};
    double dt{0.0};
    double horizon{0.0};
};

/// Fills every field except the labels and wall_clock_s.
MetricsReport evaluate_trajectory(const Trajectory& traj, double threshold = kConvergenceThreshold);

struct ComparisonTable {
    std::string title;
    std::vector<MetricsReport> rows;

    /// Aligned plain text; not-converged entries print as "N/C".
    std::string render_text() const;
};

/// Rows ordered by example, then case, then input order.
ComparisonTable comparison_table(std::vector<MetricsReport> reports, std::string title = {});

} // namespace hjbcf

#endif // HJBCF_METRICS_HPP
