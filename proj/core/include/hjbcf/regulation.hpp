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

#ifndef HJBCF_REGULATION_HPP
#define HJBCF_REGULATION_HPP

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "hjbcf/dynamics.hpp"

namespace hjbcf {

/**
 * @brief Stage-cost and controller parameters.
 *
 * The state penalty is Q(x) = x^T [Q0 + gamma P(x) P(x)^T] x and the input
 * penalty acts on the augmented input u in R^{n+1}, so R is (n+1) x (n+1).
 */
struct CostConfig {
    Eigen::MatrixXd Q0;
    Eigen::MatrixXd R;
    double gamma{0.0};
    double deadzone_eps{1e-10};

    /// Q0 = I_m, R = I_{n+1}.
    static CostConfig identity(int state_dim, int input_dim, double gamma);

    /// Throws UsageError on shape mismatch and ConfigurationError on invalid values.
    void validate(int state_dim, int input_dim) const;
};

struct ControlDecision {
    Eigen::VectorXd u_aug;  // n+1
    Eigen::VectorXd tau;    // n, D * u_aug
    bool degenerate{false}; // ||P^T x|| fell inside the deadzone
    double state_penalty{0.0};
};

/// Penalties within this distance below zero are treated as round-off and clamped.
inline constexpr double kPenaltyRoundoff = 1e-12;

double state_penalty(const DynamicsModel& model, const CostConfig& cfg, const StateVector& x);

/// P^T x / ||P^T x||, or nullopt when ||P^T x|| <= eps.
std::optional<Eigen::VectorXd> psi_direction(const Eigen::MatrixXd& P, const StateVector& x,
                                             double eps);

/**
 * Closed-form optimal input for an augmented system  edot = P u  with error e:
 *
 *   u* = -R^{-1/2} (P^T e / ||P^T e||) sqrt(e^T [Q0 + gamma P P^T] e),   tau* = [0 I] u*.
 *
 * Shared by the regulation (P = P(x), e = x) and tracking (P = P_e, e = x - x_d) laws.
 * `r_inv_sqrt` must be R^{-1/2} for cfg.R.
 */
ControlDecision closed_form_decision(const Eigen::MatrixXd& P, const Eigen::VectorXd& e,
                                     const CostConfig& cfg, const Eigen::MatrixXd& r_inv_sqrt);

ControlDecision regulation_control(const DynamicsModel& model, const CostConfig& cfg,
                                   const StateVector& x);

/// Smallest admissible gamma at x, -x^T Q0 x / ||P^T x||^2; nullopt means no constraint.
std::optional<double> gamma_lower_bound(const DynamicsModel& model, const CostConfig& cfg,
                                        const StateVector& x);

/// Axis-aligned region [lower_i, upper_i].
struct Box {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    static Box symmetric(int dim, double half_width);
};

struct GammaReport {
    bool admissible{true};
    Eigen::VectorXd worst_x;
    double worst_margin{0.0}; // min Q(x) over the grid
    std::size_t points_checked{0};
};

/// Evaluates Q(x) (unclamped) on a uniform tensor grid over `box`.
GammaReport verify_gamma_over_grid(const DynamicsModel& model, const CostConfig& cfg, const Box& box,
                                   int points_per_axis);

/// u^T R u - Q(x); zero for the closed-form law. Throws DegenerateStateError inside the deadzone.
double hjb_residual(const DynamicsModel& model, const CostConfig& cfg, const StateVector& x);

/// Regulator with R^{-1/2} factored once; cheap to call inside an integrator.
class RegulationController {
public:
    RegulationController(DynamicsModel model, CostConfig cfg);

    ControlDecision decide(const StateVector& x) const;
    Eigen::VectorXd operator()(double /*t*/, const StateVector& x) const { return decide(x).tau; }

    /// 1/2 [Q(x) + u^T R u] for the augmented optimal input.
    double stage_cost(const StateVector& x) const;

    const DynamicsModel& model() const noexcept { return model_; }
    const CostConfig& config() const noexcept { return cfg_; }

private:
    DynamicsModel model_;
    CostConfig cfg_;
    Eigen::MatrixXd r_inv_sqrt_;
};

} // namespace hjbcf

#endif // HJBCF_REGULATION_HPP
