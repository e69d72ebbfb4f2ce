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

#include "hjbcf/tracking.hpp"

#include <cmath>

#include "hjbcf/errors.hpp"
#include "hjbcf/linalg.hpp"

namespace hjbcf {

namespace {

constexpr double kPinvTolerance = 1e-10;

void check_reference_sample(const DynamicsModel& model, const Eigen::VectorXd& v, const char* what) {
    if (v.size() != model.state_dim()) {
        throw UsageError(std::string("reference ") + what + " has the wrong dimension");
    }
    if (!v.allFinite()) {
        throw UsageError(std::string("reference ") + what + " is not finite");
    }
}

} // namespace

ReferenceTrajectory zero_reference(int state_dim) {
    return {"zero",
            [state_dim](double) -> Eigen::VectorXd { return Eigen::VectorXd::Zero(state_dim); },
            [state_dim](double) -> Eigen::VectorXd { return Eigen::VectorXd::Zero(state_dim); }};
}

ReferenceTrajectory sinusoid_reference(double amplitude, double frequency) {
    const double a = amplitude;
    const double w = frequency;
    return {"sinusoid",
            [a, w](double t) -> Eigen::VectorXd {
                return Eigen::Vector2d(a * std::sin(w * t), a * std::cos(w * t));
            },
            [a, w](double t) -> Eigen::VectorXd {
                return Eigen::Vector2d(a * w * std::cos(w * t), -a * w * std::sin(w * t));
            }};
}

ReferenceTrajectory example_one_feasible_sinusoid(double amplitude, double frequency) {
    const double a = amplitude;
    const double w = frequency;
    return {"feasible-sinusoid",
            [a, w](double t) -> Eigen::VectorXd {
                const double s = std::sin(w * t);
                const double c = std::cos(w * t);
                return Eigen::Vector2d(a * s, a * (s + w * c));
            },
            [a, w](double t) -> Eigen::VectorXd {
                const double s = std::sin(w * t);
                const double c = std::cos(w * t);
                return Eigen::Vector2d(a * w * c, a * (w * c - w * w * s));
            }};
}

double reference_derivative_mismatch(const ReferenceTrajectory& ref, double t0, double t1,
                                     int samples, double h) {
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double t = samples == 1 ? t0 : t0 + (t1 - t0) * k / (samples - 1);
        const Eigen::VectorXd fd = (ref.x_d(t + h) - ref.x_d(t - h)) / (2.0 * h);
        worst = std::max(worst, (fd - ref.x_d_dot(t)).cwiseAbs().maxCoeff());
    }
    return worst;
}

Eigen::MatrixXd error_augmented_matrix(const DynamicsModel& model, const StateVector& x,
                                       const StateVector& x_d) {
    const int n = model.input_dim();
    Eigen::MatrixXd Pe(model.state_dim(), n + 1);
    Pe.col(0) = model.drift(x) - model.drift(x_d);
    Pe.rightCols(n) = model.input_matrix(x);
    return Pe;
}

ControlDecision tracking_control_error_part(const DynamicsModel& model, const CostConfig& cfg,
                                           const StateVector& x, const StateVector& x_d) {
    cfg.validate(model.state_dim(), model.input_dim());
    return closed_form_decision(error_augmented_matrix(model, x, x_d), x - x_d, cfg,
                                linalg::inverse_sqrt_spd(cfg.R));
}

Eigen::VectorXd feedforward(const DynamicsModel& model, const StateVector& x, const StateVector& x_d,
                            const Eigen::VectorXd& x_d_dot) {
    check_reference_sample(model, x_d_dot, "velocity");
    const Eigen::MatrixXd g = model.input_matrix(x);
    const linalg::PseudoInverse pinv = linalg::pseudo_inverse(g, kPinvTolerance);
    if (pinv.rank < g.cols()) {
        throw IllPosedFeedforwardError("feedforward: g(x) is rank deficient (rank " +
                                       std::to_string(pinv.rank) + " < " +
                                       std::to_string(g.cols()) + ")");
    }
    return pinv.matrix * (x_d_dot - model.drift(x_d));
}

double feedforward_residual(const DynamicsModel& model, const StateVector& x,
                            const StateVector& x_d, const Eigen::VectorXd& x_d_dot) {
    check_reference_sample(model, x_d_dot, "velocity");
    const Eigen::MatrixXd g = model.input_matrix(x);
    const Eigen::VectorXd v = x_d_dot - model.drift(x_d);
    const Eigen::MatrixXd pinv = linalg::pseudo_inverse(g, kPinvTolerance).matrix;
    return (v - g * (pinv * v)).norm();
}

Eigen::VectorXd tracking_control(const DynamicsModel& model, const CostConfig& cfg,
                                 const StateVector& x, const ReferenceTrajectory& ref, double t) {
    return TrackingController(model, cfg, ref)(t, x);
}

TrackingController::TrackingController(DynamicsModel model, CostConfig cfg, ReferenceTrajectory ref)
    : model_(std::move(model)), cfg_(std::move(cfg)), ref_(std::move(ref)) {
    cfg_.validate(model_.state_dim(), model_.input_dim());
    if (!ref_.position || !ref_.velocity) {
        throw UsageError("tracking: reference trajectory needs both position and velocity maps");
    }
    r_inv_sqrt_ = linalg::inverse_sqrt_spd(cfg_.R);
}

TrackingController::Output TrackingController::evaluate(double t, const StateVector& x) const {
    const Eigen::VectorXd xd = ref_.x_d(t);
    check_reference_sample(model_, xd, "position");
    Output out;
    out.error_part =
        closed_form_decision(error_augmented_matrix(model_, x, xd), x - xd, cfg_, r_inv_sqrt_);
    out.feedforward = feedforward(model_, x, xd, ref_.x_d_dot(t));
    out.tau = out.error_part.tau + out.feedforward;
    return out;
}

double TrackingController::stage_cost(double t, const StateVector& x) const {
    const ControlDecision& d = evaluate(t, x).error_part;
    return 0.5 * (d.state_penalty + d.u_aug.dot(cfg_.R * d.u_aug));
}

} // namespace hjbcf
