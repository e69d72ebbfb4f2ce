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

#ifndef HJBCF_SIMULATION_HPP
#define HJBCF_SIMULATION_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hjbcf/dynamics.hpp"
#include "hjbcf/regulation.hpp"
#include "hjbcf/tracking.hpp"

namespace hjbcf {

enum class IntegrationMethod { Rk4, Euler };

/// Fixed-step integration settings. Defaults: dt = 1 ms, horizon = 10 s, RK4.
struct IntegratorConfig {
    double dt{1e-3};
    double horizon{10.0};
    IntegrationMethod method{IntegrationMethod::Rk4};

    /// Number of steps, horizon / dt; throws UsageError unless it is an integer up to round-off.
    std::size_t step_count() const;
    void validate() const;
};

std::string to_string(IntegrationMethod method);
IntegrationMethod parse_integration_method(const std::string& text);

using Derivative = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

/// Classical fourth-order Runge-Kutta step. Throws IntegrationBlowupError on a non-finite stage.
Eigen::VectorXd rk4_step(const Derivative& deriv, double t, const Eigen::VectorXd& x, double dt);

Eigen::VectorXd euler_step(const Derivative& deriv, double t, const Eigen::VectorXd& x, double dt);

Eigen::VectorXd integrate_step(IntegrationMethod method, const Derivative& deriv, double t,
                               const Eigen::VectorXd& x, double dt);

/// Runs stop once the state norm exceeds this bound.
inline constexpr double kBlowupNorm = 1e6;

/// A feedback law tau(t, x) with an optional stage cost and tracking reference.
struct ClosedLoopLaw {
    std::string name;
    std::function<Eigen::VectorXd(double, const StateVector&)> control;
    /// Stage cost at (t, x, tau); zero when unset.
    std::function<double(double, const StateVector&, const Eigen::VectorXd&)> stage_cost;
    /// Desired state x_d(t); the error is x itself when unset.
    std::function<Eigen::VectorXd(double)> reference;
};

enum class RunOutcome { Completed, Blowup };

/// Uniformly sampled simulation record. All per-sample vectors share one length.
struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> states;
    std::vector<Eigen::VectorXd> controls;
    std::vector<Eigen::VectorXd> errors; // x - x_d, or x when regulating
    std::vector<double> stage_costs;
    std::vector<double> reference_residuals; // tracking only

    std::string model_name;
    std::string controller_name;
    std::string config_snapshot;
    double dt{0.0};
    double horizon{0.0};

    RunOutcome outcome{RunOutcome::Completed};
    double blowup_time{0.0};
    std::string blowup_reason;

    std::size_t size() const noexcept { return times.size(); }
    bool empty() const noexcept { return times.empty(); }
    bool blew_up() const noexcept { return outcome == RunOutcome::Blowup; }
};

/**
 * Integrates xdot = f(x) + g(x) tau(t, x) from x0 over [0, horizon].
 *
 * The law is re-evaluated at every integrator stage; the recorded control is the
 * value at the start of each step. If the state leaves the ball of radius
 * kBlowupNorm or a stage turns non-finite, the run is truncated at the last good
 * sample and marked RunOutcome::Blowup.
 */
Trajectory simulate_closed_loop(const DynamicsModel& model, const ClosedLoopLaw& law,
                                const StateVector& x0, const IntegratorConfig& icfg);

Trajectory simulate_regulation(const DynamicsModel& model, const CostConfig& cfg,
                               const StateVector& x0, const IntegratorConfig& icfg);

/// Closed loop under the tracking law; errors hold e(t) = x(t) - x_d(t).
Trajectory simulate_tracking(const DynamicsModel& model, const CostConfig& cfg,
                             const ReferenceTrajectory& ref, const StateVector& x0,
                             const IntegratorConfig& icfg);

/// V_k = 1/2 ||e_k||^2 and the forward difference dV_k = (V_{k+1} - V_k) / dt.
struct LyapunovSeries {
    std::vector<double> value;
    std::vector<double> rate;
};

LyapunovSeries lyapunov_series(const Trajectory& traj);

std::string describe(const CostConfig& cfg);

} // namespace hjbcf

#endif // HJBCF_SIMULATION_HPP
