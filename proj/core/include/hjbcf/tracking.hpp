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

#ifndef HJBCF_TRACKING_HPP
#define HJBCF_TRACKING_HPP

#include <functional>
#include <string>

#include <Eigen/Dense>

#include "hjbcf/dynamics.hpp"
#include "hjbcf/regulation.hpp"

namespace hjbcf {

/// Desired trajectory x_d(t) together with the caller's claimed derivative.
struct ReferenceTrajectory {
    std::string name;
    std::function<Eigen::VectorXd(double)> position;
    std::function<Eigen::VectorXd(double)> velocity;

    Eigen::VectorXd x_d(double t) const { return position(t); }
    Eigen::VectorXd x_d_dot(double t) const { return velocity(t); }
};

/// x_d = 0 for all t.
ReferenceTrajectory zero_reference(int state_dim);

/// x_d = A [sin wt, cos wt] (two-state models). Not in range(g) for every plant.
ReferenceTrajectory sinusoid_reference(double amplitude, double frequency);

/**
 * Sinusoid that the first benchmark system can follow exactly:
 * x_d1 = A sin wt, x_d2 = A (sin wt + w cos wt), which satisfies the
 * unactuated row x1dot = -x1 + x2.
 */
ReferenceTrajectory example_one_feasible_sinusoid(double amplitude, double frequency);

/**
 * Largest |central difference of x_d - x_d_dot| over `samples` uniform times in [t0, t1].
 * Used to spot-check that a hand-written derivative matches its position map.
 */
double reference_derivative_mismatch(const ReferenceTrajectory& ref, double t0, double t1,
                                     int samples, double h = 1e-5);

/// P_e = [f(x) - f(x_d) | g(x)].
Eigen::MatrixXd error_augmented_matrix(const DynamicsModel& model, const StateVector& x,
                                       const StateVector& x_d);

/// Closed-form law on the error system; tau is tau_e = D u_e*.
ControlDecision tracking_control_error_part(const DynamicsModel& model, const CostConfig& cfg,
                                           const StateVector& x, const StateVector& x_d);

/// g(x)^dagger (x_d_dot - f(x_d)). Throws IllPosedFeedforwardError if g(x) lacks full column rank.
Eigen::VectorXd feedforward(const DynamicsModel& model, const StateVector& x, const StateVector& x_d,
                            const Eigen::VectorXd& x_d_dot);

/// ||(I - g g^dagger)(x_d_dot - f(x_d))||: the part of the reference no input can produce.
double feedforward_residual(const DynamicsModel& model, const StateVector& x,
                            const StateVector& x_d, const Eigen::VectorXd& x_d_dot);

/// tau* = D u_e* + tau_d at time t.
Eigen::VectorXd tracking_control(const DynamicsModel& model, const CostConfig& cfg,
                                 const StateVector& x, const ReferenceTrajectory& ref, double t);

class TrackingController {
public:
    TrackingController(DynamicsModel model, CostConfig cfg, ReferenceTrajectory ref);

    struct Output {
        ControlDecision error_part;
        Eigen::VectorXd feedforward;
        Eigen::VectorXd tau;
    };

    Output evaluate(double t, const StateVector& x) const;
    Eigen::VectorXd operator()(double t, const StateVector& x) const { return evaluate(t, x).tau; }

    /// 1/2 [Q(e) + u_e^T R u_e].
    double stage_cost(double t, const StateVector& x) const;

    const DynamicsModel& model() const noexcept { return model_; }
    const CostConfig& config() const noexcept { return cfg_; }
    const ReferenceTrajectory& reference() const noexcept { return ref_; }

private:
    DynamicsModel model_;
    CostConfig cfg_;
    ReferenceTrajectory ref_;
    Eigen::MatrixXd r_inv_sqrt_;
};

} // namespace hjbcf

#endif // HJBCF_TRACKING_HPP
