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

#include "hjbcf/sola.hpp"

#include <cmath>
#include <sstream>

#include "hjbcf/errors.hpp"

namespace hjbcf {

BasisSet example_one_basis() {
    BasisSet b;
    b.name = "example-I basis";
    b.size = 7;
    b.state_dim = 2;
    b.phi = [](const StateVector& x) {
        const double x1 = x(0);
        const double x2 = x(1);
        const double c = std::cos(2.0 * x1);
        Eigen::VectorXd p(7);
        p << x1, x2, x1 * x2, x1 * x1, x2 * x2, x1 * x1 * c * c, x1 * x1 * x1;
        return p;
    };
    b.grad_phi = [](const StateVector& x) {
        const double x1 = x(0);
        const double x2 = x(1);
        const double c = std::cos(2.0 * x1);
        const double s = std::sin(2.0 * x1);
        Eigen::MatrixXd J(7, 2);
        J << 1.0, 0.0,
             0.0, 1.0,
             x2, x1,
             2.0 * x1, 0.0,
             0.0, 2.0 * x2,
             2.0 * x1 * c * c - 4.0 * x1 * x1 * c * s, 0.0,
             3.0 * x1 * x1, 0.0;
        return J;
    };
    return b;
}

BasisSet example_three_basis() {
    BasisSet b;
    b.name = "example-III basis";
    b.size = 7;
    b.state_dim = 2;
    b.phi = [](const StateVector& x) {
        const double x1 = x(0);
        const double x2 = x(1);
        Eigen::VectorXd p(7);
        p << x1, x2, x1 * x2, x1 * x1, x2 * x2, x1 * x1 * x2 * x2, x1 * x1 * x1;
        return p;
    };
    b.grad_phi = [](const StateVector& x) {
        const double x1 = x(0);
        const double x2 = x(1);
        Eigen::MatrixXd J(7, 2);
        J << 1.0, 0.0,
             0.0, 1.0,
             x2, x1,
             2.0 * x1, 0.0,
             0.0, 2.0 * x2,
             2.0 * x1 * x2 * x2, 2.0 * x1 * x1 * x2,
             3.0 * x1 * x1, 0.0;
        return J;
    };
    return b;
}

Eigen::VectorXd eval_basis(const BasisSet& basis, const StateVector& x) {
    if (x.size() != basis.state_dim) {
        throw UsageError("eval_basis: state dimension does not match the basis");
    }
    return basis.phi(x);
}

SolaConfig SolaConfig::quadratic(int basis_size) {
    SolaConfig cfg;
    cfg.alpha1 = 25.0;
    cfg.alpha2 = 0.01;
    cfg.R_b = 1.0;
    cfg.Q_b = [](const StateVector& x) { return x.squaredNorm(); };
    cfg.weight_init = Eigen::VectorXd::Zero(basis_size);
    return cfg;
}

SolaConfig SolaConfig::example_three(int basis_size) {
    SolaConfig cfg;
    cfg.alpha1 = 200.0;
    cfg.alpha2 = 0.01;
    cfg.R_b = 1.0;
    cfg.Q_b = [](const StateVector& x) {
        const double x1 = x(0);
        const double x2 = x(1);
        const double a = 2.0 * x1 + 6.0 * x1 * x2 * x2;
        const double b = 4.0 * x2 + 6.0 * x1 * x1 * x2;
        return 2.0 * (a * a + b * b);
    };
    cfg.weight_init = Eigen::VectorXd::Zero(basis_size);
    return cfg;
}

void SolaConfig::validate(int basis_size) const {
    // alpha1 = 0 is allowed: it freezes the critic.
    if (!(alpha1 >= 0.0) || !(alpha2 >= 0.0) || !std::isfinite(alpha1) || !std::isfinite(alpha2)) {
        throw ConfigurationError("SOLA gains must be finite and nonnegative");
    }
    if (!(R_b > 0.0) || !std::isfinite(R_b)) {
        throw ConfigurationError("SOLA input weight R must be positive");
    }
    if (!Q_b) {
        throw ConfigurationError("SOLA state cost Q is not set");
    }
    if (weight_init.size() != basis_size || !weight_init.allFinite()) {
        throw UsageError("SOLA initial weights must be finite with one entry per basis function");
    }
}

Eigen::VectorXd sola_control(const DynamicsModel& model, const BasisSet& basis,
                             const Eigen::VectorXd& w, double R_b, const StateVector& x) {
    if (w.size() != basis.size) {
        throw UsageError("sola_control: weight vector does not match the basis size");
    }
    if (x.size() != basis.state_dim || basis.state_dim != model.state_dim()) {
        throw UsageError("sola_control: basis and model state dimensions differ");
    }
    const Eigen::MatrixXd g = model.input_matrix(x);
    return (-0.5 / R_b) * (g.transpose() * (basis.grad_phi(x).transpose() * w));
}

Eigen::VectorXd sola_weight_rate(const DynamicsModel& model, const BasisSet& basis,
                                 const Eigen::VectorXd& w, const SolaConfig& cfg,
                                 const StateVector& x) {
    const Eigen::MatrixXd g = model.input_matrix(x);
    const Eigen::MatrixXd J = basis.grad_phi(x);
    const Eigen::VectorXd u = (-0.5 / cfg.R_b) * (g.transpose() * (J.transpose() * w));
    const Eigen::VectorXd xdot = model.drift(x) + g * u;

    const Eigen::VectorXd sigma = J * xdot;
    const double residual = sigma.dot(w) + cfg.Q_b(x) + cfg.R_b * u.squaredNorm();
    const double norm = sigma.squaredNorm() + 1.0;
    Eigen::VectorXd rate = (-cfg.alpha1 * residual / (norm * norm)) * sigma;

    if (x.dot(xdot) >= 0.0) {
        rate += (0.5 * cfg.alpha2 / cfg.R_b) * (J * (g * (g.transpose() * x)));
    }
    return rate;
}

CriticWeights sola_weight_update(const DynamicsModel& model, const BasisSet& basis,
                                 const Eigen::VectorXd& w, const SolaConfig& cfg,
                                 const StateVector& x, double dt) {
    if (!(dt > 0.0)) {
        throw UsageError("sola_weight_update: dt must be positive");
    }
    CriticWeights out;
    out.w = w + dt * sola_weight_rate(model, basis, w, cfg, x);
    out.diverged = !out.w.allFinite() || out.w.norm() > kWeightBlowupNorm;
    return out;
}

SolaRun simulate_sola(const DynamicsModel& model, const BasisSet& basis, const SolaConfig& cfg,
                      const StateVector& x0, const IntegratorConfig& icfg) {
    cfg.validate(basis.size);
    if (basis.state_dim != model.state_dim()) {
        throw UsageError("simulate_sola: basis and model state dimensions differ");
    }
    if (x0.size() != model.state_dim() || !x0.allFinite()) {
        throw UsageError("simulate_sola: initial state has the wrong dimension or is not finite");
    }
    const std::size_t steps = icfg.step_count();
    const Eigen::Index m = model.state_dim();
    const Eigen::Index N = basis.size;

    SolaRun run;
    Trajectory& traj = run.trajectory;
    traj.model_name = model.name();
    traj.controller_name = "sola";
    traj.dt = icfg.dt;
    traj.horizon = icfg.horizon;
    {
        std::ostringstream os;
        os << "alpha1=" << cfg.alpha1 << " alpha2=" << cfg.alpha2 << " R=" << cfg.R_b
           << " basis=" << basis.name;
        traj.config_snapshot = os.str();
    }

    auto record = [&](double t, const StateVector& x, const Eigen::VectorXd& w) {
        const Eigen::VectorXd tau = sola_control(model, basis, w, cfg.R_b, x);
        traj.times.push_back(t);
        traj.states.push_back(x);
        traj.controls.push_back(tau);
        traj.errors.push_back(x);
        traj.stage_costs.push_back(cfg.Q_b(x) + cfg.R_b * tau.squaredNorm());
        run.weight_norms.push_back(w.norm());
    };

    // Joint state z = [x; w].
    const Derivative joint = [&](double, const Eigen::VectorXd& z) -> Eigen::VectorXd {
        const Eigen::VectorXd x = z.head(m);
        const Eigen::VectorXd w = z.tail(N);
        Eigen::VectorXd dz(m + N);
        dz.head(m) = model.vector_field(x, sola_control(model, basis, w, cfg.R_b, x));
        dz.tail(N) = sola_weight_rate(model, basis, w, cfg, x);
        return dz;
    };

    Eigen::VectorXd z(m + N);
    z << x0, cfg.weight_init;
    record(0.0, x0, cfg.weight_init);
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * icfg.dt;
        const double t_next = static_cast<double>(k + 1) * icfg.dt;
        Eigen::VectorXd next;
        try {
            next = integrate_step(icfg.method, joint, t, z, icfg.dt);
        } catch (const IntegrationBlowupError& e) {
            traj.outcome = RunOutcome::Blowup;
            traj.blowup_time = e.time();
            traj.blowup_reason = e.what();
            break;
        }
        if (!next.allFinite() || next.head(m).norm() > kBlowupNorm ||
            next.tail(N).norm() > kWeightBlowupNorm) {
            traj.outcome = RunOutcome::Blowup;
            traj.blowup_time = t_next;
            traj.blowup_reason = "state or critic weights exceeded the blow-up bound";
            break;
        }
        z = std::move(next);
        record(t_next, z.head(m), z.tail(N));
    }
    run.final_weights = z.tail(N);
    run.diverged = traj.blew_up();
    return run;
}

} // namespace hjbcf
