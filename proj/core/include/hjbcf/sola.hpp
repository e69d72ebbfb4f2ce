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

#ifndef HJBCF_SOLA_HPP
#define HJBCF_SOLA_HPP

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hjbcf/dynamics.hpp"
#include "hjbcf/simulation.hpp"

namespace hjbcf {

/// Critic basis phi : R^m -> R^N with Jacobian grad_phi : R^m -> R^{N x m}.
struct BasisSet {
    std::string name;
    int size{0};
    int state_dim{0};
    std::function<Eigen::VectorXd(const StateVector&)> phi;
    std::function<Eigen::MatrixXd(const StateVector&)> grad_phi;
};

/// [x1, x2, x1 x2, x1^2, x2^2, x1^2 cos(2 x1)^2, x1^3]
BasisSet example_one_basis();

/// [x1, x2, x1 x2, x1^2, x2^2, x1^2 x2^2, x1^3]
BasisSet example_three_basis();

Eigen::VectorXd eval_basis(const BasisSet& basis, const StateVector& x);

/// Gains and cost for the single-online-approximator critic.
struct SolaConfig {
    double alpha1{25.0};
    double alpha2{0.01};
    double R_b{1.0};
    std::function<double(const StateVector&)> Q_b;
    Eigen::VectorXd weight_init;

    /// alpha1 = 25, alpha2 = 0.01, R = 1, Q(x) = x^T x, zero weights.
    static SolaConfig quadratic(int basis_size);

    /// alpha1 = 200, alpha2 = 0.01, R = 1, Q(x) = 2((2x1 + 6x1x2^2)^2 + (4x2 + 6x1^2x2)^2).
    static SolaConfig example_three(int basis_size);

    void validate(int basis_size) const;
};

struct CriticWeights {
    Eigen::VectorXd w;
    bool diverged{false};
};

/// Critic weights beyond this norm flag the run as diverged.
inline constexpr double kWeightBlowupNorm = 1e6;

/// Actor u = -1/2 R_b^{-1} g(x)^T grad_phi(x)^T w.
Eigen::VectorXd sola_control(const DynamicsModel& model, const BasisSet& basis,
                             const Eigen::VectorXd& w, double R_b, const StateVector& x);

/**
 * Critic weight rate
 *
 *   wdot = -alpha1 sigma / (sigma^T sigma + 1)^2 (sigma^T w + Q_b(x) + R_b |u|^2)
 *          + S(x, u) alpha2 / 2 grad_phi g R_b^{-1} g^T x,
 *
 * with sigma = grad_phi (f + g u). S = 1 while x^T (f + g u) >= 0, i.e. while the
 * quadratic Lyapunov candidate is not decreasing, and 0 otherwise.
 */
Eigen::VectorXd sola_weight_rate(const DynamicsModel& model, const BasisSet& basis,
                                 const Eigen::VectorXd& w, const SolaConfig& cfg,
                                 const StateVector& x);

/// One explicit Euler step of the critic weights.
CriticWeights sola_weight_update(const DynamicsModel& model, const BasisSet& basis,
                                 const Eigen::VectorXd& w, const SolaConfig& cfg,
                                 const StateVector& x, double dt);

struct SolaRun {
    Trajectory trajectory;
    std::vector<double> weight_norms; // one per sample
    Eigen::VectorXd final_weights;
    bool diverged{false};
};

/// Co-integrates plant and critic with the same fixed step; no probing noise.
SolaRun simulate_sola(const DynamicsModel& model, const BasisSet& basis, const SolaConfig& cfg,
                      const StateVector& x0, const IntegratorConfig& icfg);

} // namespace hjbcf

#endif // HJBCF_SOLA_HPP
