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

#include "hjbcf/simulation.hpp"

#include <cmath>
#include <sstream>

#include "hjbcf/errors.hpp"

namespace hjbcf {

namespace {

void require_finite_stage(const Eigen::VectorXd& k, double t, const char* stage) {
    if (!k.allFinite()) {
        std::ostringstream os;
        os << "integration blow-up: non-finite " << stage << " at t = " << t;
        throw IntegrationBlowupError(os.str(), t);
    }
}

} // namespace

std::size_t IntegratorConfig::step_count() const {
    validate();
    const double ratio = horizon / dt;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
        std::ostringstream os;
        os << "horizon " << horizon << " is not an integer multiple of dt " << dt;
        throw UsageError(os.str());
    }
    return static_cast<std::size_t>(rounded);
}

void IntegratorConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw UsageError("dt must be positive and finite");
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw UsageError("horizon must be positive and finite");
    }
    if (!(dt <= horizon)) {
        throw UsageError("dt must be at most the horizon");
    }
}

std::string to_string(IntegrationMethod method) {
    return method == IntegrationMethod::Rk4 ? "rk4" : "euler";
}

IntegrationMethod parse_integration_method(const std::string& text) {
    if (text == "rk4") {
        return IntegrationMethod::Rk4;
    }
    if (text == "euler") {
        return IntegrationMethod::Euler;
    }
    throw UsageError("unknown integration method '" + text + "' (expected rk4 or euler)");
}

Eigen::VectorXd rk4_step(const Derivative& deriv, double t, const Eigen::VectorXd& x, double dt) {
    const double half = 0.5 * dt;
    const Eigen::VectorXd k1 = deriv(t, x);
    require_finite_stage(k1, t, "stage 1");
    const Eigen::VectorXd k2 = deriv(t + half, x + half * k1);
    require_finite_stage(k2, t + half, "stage 2");
    const Eigen::VectorXd k3 = deriv(t + half, x + half * k2);
    require_finite_stage(k3, t + half, "stage 3");
    const Eigen::VectorXd k4 = deriv(t + dt, x + dt * k3);
    require_finite_stage(k4, t + dt, "stage 4");
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Eigen::VectorXd euler_step(const Derivative& deriv, double t, const Eigen::VectorXd& x, double dt) {
    const Eigen::VectorXd k1 = deriv(t, x);
    require_finite_stage(k1, t, "derivative");
    return x + dt * k1;
}

Eigen::VectorXd integrate_step(IntegrationMethod method, const Derivative& deriv, double t,
                               const Eigen::VectorXd& x, double dt) {
    return method == IntegrationMethod::Rk4 ? rk4_step(deriv, t, x, dt)
                                            : euler_step(deriv, t, x, dt);
}

Trajectory simulate_closed_loop(const DynamicsModel& model, const ClosedLoopLaw& law,
                                const StateVector& x0, const IntegratorConfig& icfg) {
    if (!law.control) {
        throw UsageError("simulate_closed_loop: control law is empty");
    }
    if (x0.size() != model.state_dim() || !x0.allFinite()) {
        throw UsageError("simulate_closed_loop: initial state has the wrong dimension or is not finite");
    }
    const std::size_t steps = icfg.step_count();

    Trajectory traj;
    traj.model_name = model.name();
    traj.controller_name = law.name;
    traj.dt = icfg.dt;
    traj.horizon = icfg.horizon;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.controls.reserve(steps + 1);
    traj.errors.reserve(steps + 1);
    traj.stage_costs.reserve(steps + 1);

    auto record = [&](double t, const StateVector& x) {
        const Eigen::VectorXd tau = law.control(t, x);
        traj.times.push_back(t);
        traj.states.push_back(x);
        traj.controls.push_back(tau);
        traj.errors.push_back(law.reference ? Eigen::VectorXd(x - law.reference(t)) : x);
        traj.stage_costs.push_back(law.stage_cost ? law.stage_cost(t, x, tau) : 0.0);
    };

    const Derivative closed_loop = [&](double t, const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return model.vector_field(x, law.control(t, x));
    };

    StateVector x = x0;
    record(0.0, x);
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * icfg.dt;
        const double t_next = static_cast<double>(k + 1) * icfg.dt;
        StateVector next;
        try {
            next = integrate_step(icfg.method, closed_loop, t, x, icfg.dt);
        } catch (const IntegrationBlowupError& e) {
            traj.outcome = RunOutcome::Blowup;
            traj.blowup_time = e.time();
            traj.blowup_reason = e.what();
            return traj;
        }
        if (!next.allFinite() || next.norm() > kBlowupNorm) {
            traj.outcome = RunOutcome::Blowup;
            traj.blowup_time = t_next;
            traj.blowup_reason = "state norm exceeded the blow-up bound";
            return traj;
        }
        x = std::move(next);
        record(t_next, x);
    }
    return traj;
}

std::string describe(const CostConfig& cfg) {
    std::ostringstream os;
    Eigen::IOFormat flat(Eigen::FullPrecision, Eigen::DontAlignCols, ",", ";", "", "", "[", "]");
    os << "Q0=" << cfg.Q0.format(flat) << " R=" << cfg.R.format(flat) << " gamma=" << cfg.gamma
       << " deadzone_eps=" << cfg.deadzone_eps;
    return os.str();
}

Trajectory simulate_regulation(const DynamicsModel& model, const CostConfig& cfg,
                               const StateVector& x0, const IntegratorConfig& icfg) {
    const RegulationController controller(model, cfg);
    ClosedLoopLaw law;
    law.name = "proposed";
    law.control = [&controller](double t, const StateVector& x) { return controller(t, x); };
    law.stage_cost = [&controller](double, const StateVector& x, const Eigen::VectorXd&) {
        return controller.stage_cost(x);
    };
    Trajectory traj = simulate_closed_loop(model, law, x0, icfg);
    traj.config_snapshot = describe(cfg);
    return traj;
}

Trajectory simulate_tracking(const DynamicsModel& model, const CostConfig& cfg,
                             const ReferenceTrajectory& ref, const StateVector& x0,
                             const IntegratorConfig& icfg) {
    const TrackingController controller(model, cfg, ref);
    ClosedLoopLaw law;
    law.name = "proposed-tracking";
    law.control = [&controller](double t, const StateVector& x) { return controller(t, x); };
    law.stage_cost = [&controller](double t, const StateVector& x, const Eigen::VectorXd&) {
        return controller.stage_cost(t, x);
    };
    law.reference = [&ref](double t) { return ref.x_d(t); };
    Trajectory traj = simulate_closed_loop(model, law, x0, icfg);
    traj.config_snapshot = describe(cfg) + " reference=" + ref.name;
    traj.reference_residuals.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double t = traj.times[k];
        traj.reference_residuals.push_back(
            feedforward_residual(model, traj.states[k], ref.x_d(t), ref.x_d_dot(t)));
    }
    return traj;
}

LyapunovSeries lyapunov_series(const Trajectory& traj) {
    if (traj.empty()) {
        throw UsageError("lyapunov_series: trajectory is empty");
    }
    LyapunovSeries out;
    out.value.reserve(traj.size());
    for (const auto& e : traj.errors) {
        out.value.push_back(0.5 * e.squaredNorm());
    }
    if (traj.size() > 1) {
        out.rate.reserve(traj.size() - 1);
        for (std::size_t k = 0; k + 1 < out.value.size(); ++k) {
            out.rate.push_back((out.value[k + 1] - out.value[k]) / traj.dt);
        }
    }
    return out;
}

} // namespace hjbcf
