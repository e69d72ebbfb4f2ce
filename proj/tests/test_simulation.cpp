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

#include <cmath>

#include <gtest/gtest.h>

#include "hjbcf/errors.hpp"
#include "hjbcf/simulation.hpp"
#include "test_util.hpp"

using namespace hjbcf;
using hjbcf::testutil::vec;

namespace {

CostConfig unit_cfg(const DynamicsModel& m, double gamma) {
    return CostConfig::identity(m.state_dim(), m.input_dim(), gamma);
}

bool bitwise_equal(const Trajectory& a, const Trajectory& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a.times[k] != b.times[k] || a.states[k] != b.states[k] || a.controls[k] != b.controls[k]) {
            return false;
        }
    }
    return true;
}

double max_rate(const Trajectory& traj) {
    const LyapunovSeries s = lyapunov_series(traj);
    double worst = -INFINITY;
    for (double r : s.rate) {
        worst = std::max(worst, r);
    }
    return worst;
}

} // namespace

TEST(Integrator, StepCount) {
    EXPECT_EQ((IntegratorConfig{1e-3, 10.0}).step_count(), 10000u);
    EXPECT_EQ((IntegratorConfig{0.1, 0.3}).step_count(), 3u);
    EXPECT_THROW((IntegratorConfig{0.3, 1.0}).step_count(), UsageError);
    EXPECT_THROW((IntegratorConfig{0.0, 1.0}).validate(), UsageError);
    EXPECT_THROW((IntegratorConfig{2.0, 1.0}).validate(), UsageError);
}

TEST(Integrator, ZeroDerivativeLeavesStateUnchanged) {
    const Derivative zero = [](double, const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return Eigen::VectorXd::Zero(x.size());
    };
    EXPECT_EQ(rk4_step(zero, 0.0, vec({1.0, -2.0}), 0.1), vec({1.0, -2.0}));
}

TEST(Integrator, Rk4OnDecayMatchesTaylorPolynomial) {
    const Derivative decay = [](double, const Eigen::VectorXd& x) -> Eigen::VectorXd { return -x; };
    const double h = 0.1;
    // RK4 on a linear field equals the degree-4 Taylor polynomial of exp(-h).
    const double taylor = 1.0 - h + h * h / 2.0 - h * h * h / 6.0 + h * h * h * h / 24.0;
    const double step = rk4_step(decay, 0.0, vec({1.0}), h)(0);
    EXPECT_NEAR(step, taylor, 4e-16);
    EXPECT_NEAR(step, 0.9048375, 1e-7);
    EXPECT_NEAR(step, std::exp(-h), 1e-7);
}

TEST(Integrator, Rk4OnLinearSystemMatchesSeries) {
    Eigen::Matrix3d A;
    A << -1.0, 2.0, 0.0, -0.5, -0.3, 1.0, 0.2, 0.0, -2.0;
    const Derivative lin = [&A](double, const Eigen::VectorXd& x) -> Eigen::VectorXd { return A * x; };
    const Eigen::VectorXd x0 = vec({1.0, -1.0, 0.5});
    for (double h : {0.2, 0.1, 0.05}) {
        Eigen::Matrix3d series = Eigen::Matrix3d::Identity();
        Eigen::Matrix3d term = Eigen::Matrix3d::Identity();
        for (int k = 1; k <= 4; ++k) {
            term = term * A * (h / k);
            series += term;
        }
        EXPECT_LT((rk4_step(lin, 0.0, x0, h) - series * x0).norm(), 1e-14);
    }
}

TEST(Integrator, NonFiniteStageRaisesWithTime) {
    const Derivative bad = [](double t, const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return t > 0.5 ? Eigen::VectorXd::Constant(x.size(), NAN) : Eigen::VectorXd(-x);
    };
    try {
        rk4_step(bad, 0.45, vec({1.0}), 0.1);
        FAIL();
    } catch (const IntegrationBlowupError& e) {
        EXPECT_NEAR(e.time(), 0.5 + 0.0, 0.06);
    }
}

TEST(Simulation, ExampleOneConvergesAndIsDeterministic) {
    const DynamicsModel model = example_one();
    const CostConfig cfg = unit_cfg(model, 1.0);
    const IntegratorConfig icfg{1e-3, 10.0};
    const Trajectory a = simulate_regulation(model, cfg, vec({5.0, -5.0}), icfg);
    ASSERT_EQ(a.size(), 10001u);
    EXPECT_EQ(a.times.front(), 0.0);
    EXPECT_NEAR(a.times.back(), 10.0, 1e-12);
    EXPECT_LT(a.states.back().norm(), 1e-3);
    EXPECT_FALSE(a.blew_up());
    EXPECT_EQ(a.controls.size(), a.size());
    EXPECT_EQ(a.stage_costs.size(), a.size());

    const Trajectory b = simulate_regulation(model, cfg, vec({5.0, -5.0}), icfg);
    EXPECT_TRUE(bitwise_equal(a, b));
}

TEST(Simulation, EquilibriumStaysPut) {
    const DynamicsModel model = example_one();
    const Trajectory traj = simulate_regulation(model, unit_cfg(model, 1.0), vec({0.0, 0.0}), {1e-2, 1.0});
    for (const auto& x : traj.states) {
        EXPECT_EQ(x, Eigen::Vector2d::Zero());
    }
    for (double v : lyapunov_series(traj).value) {
        EXPECT_EQ(v, 0.0);
    }
}

TEST(Simulation, ExampleThreeConverges) {
    const DynamicsModel model = example_three();
    const Trajectory traj = simulate_regulation(model, unit_cfg(model, 0.1), vec({4.0, -4.0}), {});
    EXPECT_LT(traj.states.back().norm(), 1e-3);
}

TEST(Simulation, LyapunovDecreaseOutsideDeadzone) {
    const DynamicsModel model = example_one();
    const CostConfig cfg = unit_cfg(model, 1.0);
    const Trajectory traj = simulate_regulation(model, cfg, vec({5.0, -5.0}), {});
    const LyapunovSeries s = lyapunov_series(traj);
    ASSERT_EQ(s.rate.size(), traj.size() - 1);
    for (std::size_t k = 0; k < s.rate.size(); ++k) {
        const Eigen::VectorXd& x = traj.states[k];
        if ((model.augmented(x).transpose() * x).norm() > cfg.deadzone_eps) {
            ASSERT_LT(s.rate[k], 1e-9) << "k = " << k;
        }
    }
}

TEST(Simulation, MonotoneOnAllBenchmarkRuns) {
    struct Setup {
        DynamicsModel model;
        double gamma;
        Eigen::VectorXd x0;
        double horizon;
    };
    const std::vector<Setup> setups{
        {example_one(), 1.0, vec({5.0, -5.0}), 10.0},
        {example_two(ExampleTwoParams::case_one()), 0.5, vec({2.0, -2.0}), 40.0},
        {example_two(ExampleTwoParams::case_two()), 0.5, vec({2.0, -2.0}), 40.0},
        {example_three(), 0.1, vec({4.0, -4.0}), 10.0},
    };
    for (const auto& s : setups) {
        const Trajectory traj =
            simulate_regulation(s.model, unit_cfg(s.model, s.gamma), s.x0, {1e-3, s.horizon});
        EXPECT_LE(max_rate(traj) * traj.dt, 1e-9) << s.model.name();
    }
}

TEST(Simulation, StepHalvingChangesExampleOneBarely) {
    const DynamicsModel model = example_one();
    const CostConfig cfg = unit_cfg(model, 1.0);
    const Trajectory coarse = simulate_regulation(model, cfg, vec({5.0, -5.0}), {1e-3, 10.0});
    const Trajectory fine = simulate_regulation(model, cfg, vec({5.0, -5.0}), {5e-4, 10.0});
    EXPECT_LT((coarse.states.back() - fine.states.back()).norm(), 1e-6);
}

TEST(Simulation, EulerIsSelectable) {
    const DynamicsModel model = example_one();
    IntegratorConfig icfg{1e-3, 5.0, IntegrationMethod::Euler};
    const Trajectory traj = simulate_regulation(model, unit_cfg(model, 1.0), vec({1.0, 1.0}), icfg);
    EXPECT_LT(traj.states.back().norm(), 0.1);
}

TEST(Simulation, BlowupIsReportedNotThrown) {
    // xdot = x^2 with no control authority escapes in finite time from x0 = 1.
    const DynamicsModel escape(
        "escape", 1, 1, [](const StateVector& x) { return Eigen::VectorXd(x.array().square()); },
        [](const StateVector&) { return Eigen::MatrixXd::Zero(1, 1); });
    ClosedLoopLaw law;
    law.name = "none";
    law.control = [](double, const StateVector&) { return Eigen::VectorXd::Zero(1); };
    const Trajectory traj = simulate_closed_loop(escape, law, vec({1.0}), {1e-3, 2.0});
    EXPECT_TRUE(traj.blew_up());
    EXPECT_GT(traj.blowup_time, 0.9);
    EXPECT_LT(traj.blowup_time, 1.01);
    EXPECT_LE(traj.states.back().norm(), kBlowupNorm);
}

TEST(Tracking, ZeroReferenceIsBitwiseRegulation) {
    for (const auto& [model, gamma, x0] :
         {std::tuple{example_one(), 1.0, vec({5.0, -5.0})},
          std::tuple{example_two(ExampleTwoParams::case_one()), 0.5, vec({2.0, -2.0})}}) {
        const CostConfig cfg = unit_cfg(model, gamma);
        const Trajectory reg = simulate_regulation(model, cfg, x0, {});
        const Trajectory trk = simulate_tracking(model, cfg, zero_reference(2), x0, {});
        EXPECT_TRUE(bitwise_equal(reg, trk)) << model.name();
    }
}

TEST(Tracking, WideInputMatrixHasNoExactFeedforward) {
    // g is 2x3 in Example III, so it never has full column rank.
    const DynamicsModel model = example_three();
    EXPECT_THROW(simulate_tracking(model, unit_cfg(model, 0.1), zero_reference(2), vec({4.0, -4.0}), {}),
                 IllPosedFeedforwardError);
}

TEST(Tracking, FeasibleReferenceStartedOnTrackStaysOnTrack) {
    const DynamicsModel model = example_one();
    const ReferenceTrajectory ref = example_one_feasible_sinusoid(1.0, 1.0);
    const Trajectory traj = simulate_tracking(model, unit_cfg(model, 1.0), ref, ref.x_d(0.0), {});
    double worst = 0.0;
    for (const auto& e : traj.errors) {
        worst = std::max(worst, e.norm());
    }
    EXPECT_LT(worst, 1e-6);
    for (double r : traj.reference_residuals) {
        EXPECT_LT(r, 1e-10);
    }
}

TEST(Tracking, FeasibleReferenceIsAcquiredFromOffTrack) {
    const DynamicsModel model = example_one();
    const ReferenceTrajectory ref = example_one_feasible_sinusoid(1.0, 1.0);
    const Trajectory traj = simulate_tracking(model, unit_cfg(model, 1.0), ref, vec({2.0, -1.0}), {});
    EXPECT_LT(traj.errors.back().norm(), 1e-2);
}

TEST(Tracking, InfeasibleSinusoidStaysBoundedWithResidualReported) {
    // [sin t, cos t] needs authority on x1, which example I lacks; the error cannot vanish.
    const DynamicsModel model = example_one();
    const ReferenceTrajectory ref = sinusoid_reference(1.0, 1.0);
    const Trajectory traj = simulate_tracking(model, unit_cfg(model, 1.0), ref, vec({0.0, 1.0}), {});
    EXPECT_FALSE(traj.blew_up());
    double worst = 0.0;
    double worst_residual = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        worst = std::max(worst, traj.errors[k].norm());
        worst_residual = std::max(worst_residual, traj.reference_residuals[k]);
    }
    EXPECT_LT(worst, 2.0);
    EXPECT_GT(worst_residual, 0.9);
}
