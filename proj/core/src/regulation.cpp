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

#include "hjbcf/regulation.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hjbcf/errors.hpp"
#include "hjbcf/linalg.hpp"

namespace hjbcf {

namespace {

// x^T Q0 x + gamma ||P^T x||^2, without forming P P^T.
double raw_penalty(const Eigen::MatrixXd& P, const Eigen::VectorXd& x, const CostConfig& cfg) {
    return x.dot(cfg.Q0 * x) + cfg.gamma * (P.transpose() * x).squaredNorm();
}

double checked_penalty(const Eigen::MatrixXd& P, const Eigen::VectorXd& x, const CostConfig& cfg) {
    const double q = raw_penalty(P, x, cfg);
    if (q >= 0.0) {
        return q;
    }
    if (q >= -kPenaltyRoundoff) {
        return 0.0;
    }
    std::ostringstream os;
    os << "state penalty Q(x) = " << q << " < 0 at x = [" << x.transpose()
       << "]; gamma = " << cfg.gamma << " violates the admissibility bound";
    throw GammaAdmissibilityError(os.str(), x, q);
}

} // namespace

CostConfig CostConfig::identity(int state_dim, int input_dim, double gamma) {
    CostConfig cfg;
    cfg.Q0 = Eigen::MatrixXd::Identity(state_dim, state_dim);
    cfg.R = Eigen::MatrixXd::Identity(input_dim + 1, input_dim + 1);
    cfg.gamma = gamma;
    return cfg;
}

void CostConfig::validate(int state_dim, int input_dim) const {
    if (Q0.rows() != state_dim || Q0.cols() != state_dim) {
        std::ostringstream os;
        os << "Q0 must be " << state_dim << "x" << state_dim << ", got " << Q0.rows() << "x"
           << Q0.cols();
        throw UsageError(os.str());
    }
    if (R.rows() != input_dim + 1 || R.cols() != input_dim + 1) {
        std::ostringstream os;
        os << "R must be " << input_dim + 1 << "x" << input_dim + 1 << " (augmented input), got "
           << R.rows() << "x" << R.cols();
        throw UsageError(os.str());
    }
    if (!Q0.allFinite() || !linalg::is_symmetric(Q0)) {
        throw ConfigurationError("Q0 must be finite and symmetric");
    }
    linalg::require_spd(R, "R");
    if (!std::isfinite(gamma)) {
        throw ConfigurationError("gamma must be finite");
    }
    if (!(deadzone_eps > 0.0)) {
        throw ConfigurationError("deadzone_eps must be positive");
    }
}

double state_penalty(const DynamicsModel& model, const CostConfig& cfg, const StateVector& x) {
    cfg.validate(model.state_dim(), model.input_dim());
    return checked_penalty(model.augmented(x), x, cfg);
}

std::optional<Eigen::VectorXd> psi_direction(const Eigen::MatrixXd& P, const StateVector& x,
                                             double eps) {
    if (P.rows() != x.size()) {
        throw UsageError("psi_direction: P and x have inconsistent dimensions");
    }
    Eigen::VectorXd p = P.transpose() * x;
    const double norm = p.norm();
    if (!(norm > eps)) {
        return std::nullopt;
    }
    return Eigen::VectorXd(p / norm);
}

ControlDecision closed_form_decision(const Eigen::MatrixXd& P, const Eigen::VectorXd& e,
                                     const CostConfig& cfg, const Eigen::MatrixXd& r_inv_sqrt) {
    const Eigen::Index n_aug = P.cols();
    ControlDecision out;
    out.state_penalty = checked_penalty(P, e, cfg);

    const auto psi = psi_direction(P, e, cfg.deadzone_eps);
    if (!psi) {
        out.degenerate = true;
        out.u_aug = Eigen::VectorXd::Zero(n_aug);
        out.tau = Eigen::VectorXd::Zero(n_aug - 1);
        return out;
    }
    out.u_aug = -(r_inv_sqrt * *psi) * std::sqrt(out.state_penalty);
    out.tau = out.u_aug.tail(n_aug - 1);
    return out;
}

ControlDecision regulation_control(const DynamicsModel& model, const CostConfig& cfg,
                                   const StateVector& x) {
    return RegulationController(model, cfg).decide(x);
}

std::optional<double> gamma_lower_bound(const DynamicsModel& model, const CostConfig& cfg,
                                        const StateVector& x) {
    const Eigen::MatrixXd P = model.augmented(x);
    const double drive = (P.transpose() * x).squaredNorm();
    if (!(std::sqrt(drive) > cfg.deadzone_eps)) {
        return std::nullopt;
    }
    return -x.dot(cfg.Q0 * x) / drive;
}

Box Box::symmetric(int dim, double half_width) {
    return {Eigen::VectorXd::Constant(dim, -half_width), Eigen::VectorXd::Constant(dim, half_width)};
}

GammaReport verify_gamma_over_grid(const DynamicsModel& model, const CostConfig& cfg, const Box& box,
                                   int points_per_axis) {
    const int m = model.state_dim();
    if (box.lower.size() != m || box.upper.size() != m) {
        throw UsageError("verify_gamma_over_grid: box dimension does not match the model");
    }
    if (!box.lower.allFinite() || !box.upper.allFinite() ||
        (box.upper - box.lower).minCoeff() < 0.0) {
        throw UsageError("verify_gamma_over_grid: box must be bounded with lower <= upper");
    }
    if (points_per_axis < 2) {
        throw UsageError("verify_gamma_over_grid: points_per_axis must be at least 2");
    }

    GammaReport report;
    report.worst_margin = std::numeric_limits<double>::infinity();
    std::vector<int> index(static_cast<std::size_t>(m), 0);
    Eigen::VectorXd x(m);
    const Eigen::VectorXd step = (box.upper - box.lower) / (points_per_axis - 1);
    for (;;) {
        for (int i = 0; i < m; ++i) {
            x(i) = box.lower(i) + step(i) * index[static_cast<std::size_t>(i)];
        }
        const double q = raw_penalty(model.augmented(x), x, cfg);
        ++report.points_checked;
        if (q < report.worst_margin) {
            report.worst_margin = q;
            report.worst_x = x;
        }
        int axis = 0;
        while (axis < m && ++index[static_cast<std::size_t>(axis)] == points_per_axis) {
            index[static_cast<std::size_t>(axis)] = 0;
            ++axis;
        }
        if (axis == m) {
            break;
        }
    }
    report.admissible = report.worst_margin >= -kPenaltyRoundoff;
    return report;
}

double hjb_residual(const DynamicsModel& model, const CostConfig& cfg, const StateVector& x) {
    const ControlDecision d = regulation_control(model, cfg, x);
    if (d.degenerate) {
        throw DegenerateStateError("hjb_residual: control direction vanishes at this state");
    }
    return d.u_aug.dot(cfg.R * d.u_aug) - d.state_penalty;
}

RegulationController::RegulationController(DynamicsModel model, CostConfig cfg)
    : model_(std::move(model)), cfg_(std::move(cfg)) {
    cfg_.validate(model_.state_dim(), model_.input_dim());
    r_inv_sqrt_ = linalg::inverse_sqrt_spd(cfg_.R);
}

ControlDecision RegulationController::decide(const StateVector& x) const {
    return closed_form_decision(model_.augmented(x), x, cfg_, r_inv_sqrt_);
}

double RegulationController::stage_cost(const StateVector& x) const {
    const ControlDecision d = decide(x);
    return 0.5 * (d.state_penalty + d.u_aug.dot(cfg_.R * d.u_aug));
}

} // namespace hjbcf
