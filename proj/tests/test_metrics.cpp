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
#include <thread>

#include <gtest/gtest.h>

#include "hjbcf/errors.hpp"
#include "hjbcf/metrics.hpp"
#include "test_util.hpp"

using namespace hjbcf;
using hjbcf::testutil::vec;

namespace {

// Synthetic uniform trajectory with error e(t) and control tau(t).
template <class ErrorFn, class ControlFn>
Trajectory synthetic(double horizon, double dt, ErrorFn e, ControlFn tau) {
    Trajectory traj;
    traj.dt = dt;
    traj.horizon = horizon;
    const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        traj.times.push_back(t);
        traj.states.push_back(e(t));
        traj.errors.push_back(e(t));
        traj.controls.push_back(tau(t));
        traj.stage_costs.push_back(0.0);
    }
    return traj;
}

Trajectory benchmark_run(const DynamicsModel& model, double gamma, const Eigen::VectorXd& x0) {
    return simulate_regulation(model, CostConfig::identity(2, model.input_dim(), gamma), x0, {});
}

} // namespace

TEST(Itse, ZeroAndConstantError) {
    const auto zero = synthetic(5.0, 0.01, [](double) { return vec({0.0}); }, [](double) { return vec({0.0}); });
    EXPECT_EQ(itse(zero), 0.0);

    const double T = 4.0;
    const auto ones = synthetic(T, 1e-3, [](double) { return vec({1.0}); }, [](double) { return vec({0.0}); });
    EXPECT_NEAR(itse(ones), T * T / 2.0, 1e-9 * T * T / 2.0);
    EXPECT_NEAR(itse(ones, Quadrature::Simpson), T * T / 2.0, 1e-9 * T * T / 2.0);
}

TEST(Itse, ExplicitReferenceMatchesStoredError) {
    const DynamicsModel model = example_one();
    const ReferenceTrajectory ref = example_one_feasible_sinusoid(1.0, 1.0);
    const Trajectory traj = simulate_tracking(model, CostConfig::identity(2, 1, 1.0), ref, vec({2.0, -1.0}), {});
    EXPECT_NEAR(itse(traj, ref), itse(traj), 1e-12 * itse(traj));
}

TEST(CumulativeCost, ZeroAndConstantControl) {
    const auto zero = synthetic(5.0, 0.01, [](double) { return vec({0.0, 0.0}); }, [](double) { return vec({0.0}); });
    EXPECT_EQ(cumulative_cost(zero), 0.0);

    const double T = 3.0;
    const Eigen::VectorXd c = vec({1.5, -2.0});
    const auto constant = synthetic(T, 1e-3, [](double) { return vec({0.0}); }, [&c](double) { return c; });
    EXPECT_NEAR(cumulative_cost(constant), c.squaredNorm() * T, 1e-9);
}

TEST(CumulativeCost, ControlRateUsesCentralDifferences) {
    // tau = t^2: central differences are exact in the interior, one-sided at the ends.
    const auto traj = synthetic(1.0, 0.1, [](double) { return vec({0.0}); }, [](double t) { return vec({t * t}); });
    const auto rate = control_rate(traj);
    EXPECT_NEAR(rate[5](0), 1.0, 1e-12);
    EXPECT_NEAR(rate[0](0), 0.1, 1e-12);
    EXPECT_NEAR(rate.back()(0), 1.9, 1e-12);
}

TEST(ConvergenceTime, Definitions) {
    const auto inside = synthetic(1.0, 0.1, [](double) { return vec({1e-4}); }, [](double) { return vec({0.0}); });
    ASSERT_TRUE(convergence_time(inside));
    EXPECT_EQ(*convergence_time(inside), 0.0);

    // Dips below the threshold, leaves, and returns at t = 0.7.
    const auto bounce = synthetic(1.0, 0.1,
                                  [](double t) { return vec({(t > 0.15 && t < 0.35) || t > 0.65 ? 1e-4 : 1.0}); },
                                  [](double) { return vec({0.0}); });
    ASSERT_TRUE(convergence_time(bounce));
    EXPECT_NEAR(*convergence_time(bounce), 0.7, 1e-12);

    const auto growing = synthetic(1.0, 0.1, [](double t) { return vec({std::exp(t)}); },
                                   [](double) { return vec({0.0}); });
    EXPECT_FALSE(convergence_time(growing));
    EXPECT_EQ(classify(growing), RunStatus::Diverged);

    const auto slow = synthetic(1.0, 0.1, [](double t) { return vec({1.0 - 0.5 * t}); },
                                [](double) { return vec({0.0}); });
    EXPECT_EQ(classify(slow), RunStatus::NotConverged);
}

TEST(ConvergenceTime, ExampleOneRunIsFinite) {
    const Trajectory traj = benchmark_run(example_one(), 1.0, vec({5.0, -5.0}));
    const auto tc = convergence_time(traj);
    ASSERT_TRUE(tc);
    EXPECT_GT(*tc, 0.0);
    EXPECT_LT(*tc, traj.horizon);
    EXPECT_EQ(classify(traj), RunStatus::Converged);
}

TEST(WallClock, NoOpIsTiny) {
    const double t = wall_clock([] {});
    EXPECT_GE(t, 0.0);
    EXPECT_LT(t, 1e-2);
    const double slept = median_wall_clock([] { std::this_thread::sleep_for(std::chrono::milliseconds(2)); }, 3);
    EXPECT_GE(slept, 1.5e-3);
    EXPECT_THROW(median_wall_clock([] {}, 0), UsageError);
}

TEST(Metrics, NonnegativeAndMonotoneUnderTruncation) {
    const Trajectory full = benchmark_run(example_one(), 1.0, vec({5.0, -5.0}));
    const double itse_full = itse(full);
    const double cost_full = cumulative_cost(full);
    EXPECT_GE(itse_full, 0.0);
    EXPECT_GE(cost_full, 0.0);
    for (std::size_t cut : {2u, 100u, 2500u, 7000u}) {
        Trajectory prefix = full;
        prefix.times.resize(cut);
        prefix.states.resize(cut);
        prefix.controls.resize(cut);
        prefix.errors.resize(cut);
        prefix.stage_costs.resize(cut);
        EXPECT_LE(itse(prefix), itse_full);
        EXPECT_LE(cumulative_cost(prefix), cost_full + 1e-9);
    }
}

TEST(Metrics, TrapezoidAndSimpsonAgreeOnSmoothRuns) {
    for (const auto& [model, gamma, x0] :
         {std::tuple{example_one(), 1.0, vec({5.0, -5.0})},
          std::tuple{example_two(ExampleTwoParams::case_one()), 0.5, vec({2.0, -2.0})},
          std::tuple{example_three(), 0.1, vec({4.0, -4.0})}}) {
        const Trajectory traj = benchmark_run(model, gamma, x0);
        const double a = itse(traj);
        const double b = itse(traj, Quadrature::Simpson);
        EXPECT_LT(std::abs(a - b), 1e-4 * a) << model.name();
        const double c = cumulative_cost(traj);
        const double d = cumulative_cost(traj, Quadrature::Simpson);
        // Example III's control rate has a ~20 ms opening transient that the 1 ms grid only
        // partly resolves, so its cost is not smooth in the cross-check sense.
        const double tol = model.name() == "example-III" ? 5e-3 : 1e-4;
        EXPECT_LT(std::abs(c - d), tol * c) << model.name();
    }
}

TEST(ComparisonTable, SingleRowAndNotConverged) {
    MetricsReport r;
    r.example = "I";
    r.method = "Proposed method";
    r.itse = 3.0390156;
    r.cumulative_cost = 859.659;
    r.convergence_time_s = 7.374;
    r.wall_clock_s = 0.0123;
    const ComparisonTable single = comparison_table({r}, "Example I");
    ASSERT_EQ(single.rows.size(), 1u);
    const std::string text = single.render_text();
    EXPECT_NE(text.find("Proposed method"), std::string::npos);
    EXPECT_NE(text.find("3.039"), std::string::npos);
    EXPECT_EQ(text.find("N/C"), std::string::npos);
    EXPECT_EQ(text.find("Case"), std::string::npos);

    MetricsReport nc = r;
    nc.example = "II";
    nc.case_label = "Case 2";
    nc.method = "HJB-SOLA";
    nc.status = RunStatus::Diverged;
    nc.convergence_time_s.reset();
    MetricsReport c1 = r;
    c1.example = "II";
    c1.case_label = "Case 1";
    const ComparisonTable two = comparison_table({nc, c1}, "Example II");
    EXPECT_EQ(two.rows.front().case_label, "Case 1");
    const std::string t2 = two.render_text();
    EXPECT_NE(t2.find("| Case 2 | HJB-SOLA        | N/C"), std::string::npos) << t2;
    EXPECT_NE(t2.find("N/C: Not Converged"), std::string::npos);

    EXPECT_THROW(comparison_table({}), UsageError);
}

TEST(ComparisonTable, OrderingIsStableByExample) {
    MetricsReport a;
    a.example = "III";
    a.method = "x";
    MetricsReport b = a;
    b.example = "I";
    b.method = "y";
    MetricsReport c = a;
    c.example = "I";
    c.method = "z";
    const ComparisonTable t = comparison_table({a, b, c});
    EXPECT_EQ(t.rows[0].method, "y");
    EXPECT_EQ(t.rows[1].method, "z");
    EXPECT_EQ(t.rows[2].method, "x");
}
