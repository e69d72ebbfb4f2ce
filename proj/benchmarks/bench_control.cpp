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

#include <benchmark/benchmark.h>

#include "hjbcf/hjbcf.hpp"

using namespace hjbcf;

namespace {

DynamicsModel model_for(int index) {
    switch (index) {
    case 0:
        return example_one();
    case 1:
        return example_two(ExampleTwoParams::case_one());
    default:
        return example_three();
    }
}

void BM_RegulationControl(benchmark::State& state) {
    const DynamicsModel model = model_for(static_cast<int>(state.range(0)));
    const CostConfig cfg = CostConfig::identity(2, model.input_dim(), 0.1);
    const RegulationController ctrl(model, cfg);
    const Eigen::Vector2d x(1.3, -0.7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ctrl(0.0, x));
    }
}
BENCHMARK(BM_RegulationControl)->DenseRange(0, 2);

void BM_TrackingControl(benchmark::State& state) {
    const DynamicsModel model = example_one();
    const TrackingController ctrl(model, CostConfig::identity(2, 1, 1.0), example_one_feasible_sinusoid(1.0, 1.0));
    const Eigen::Vector2d x(1.3, -0.7);
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ctrl(t, x));
        t += 1e-3;
    }
}
BENCHMARK(BM_TrackingControl);

void BM_SolaControl(benchmark::State& state) {
    const DynamicsModel model = example_one();
    const BasisSet basis = example_one_basis();
    const Eigen::VectorXd w = Eigen::VectorXd::LinSpaced(basis.size, -0.5, 0.5);
    const Eigen::Vector2d x(1.3, -0.7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sola_control(model, basis, w, 1.0, x));
    }
}
BENCHMARK(BM_SolaControl);

void BM_SimulateRegulation(benchmark::State& state) {
    const int index = static_cast<int>(state.range(0));
    const DynamicsModel model = model_for(index);
    const double gammas[] = {1.0, 0.5, 0.1};
    const Eigen::Vector2d x0s[] = {{5.0, -5.0}, {2.0, -2.0}, {4.0, -4.0}};
    const CostConfig cfg = CostConfig::identity(2, model.input_dim(), gammas[index]);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_regulation(model, cfg, x0s[index], {1e-3, 10.0}));
    }
}
BENCHMARK(BM_SimulateRegulation)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_SimulateSola(benchmark::State& state) {
    const DynamicsModel model = example_one();
    const BasisSet basis = example_one_basis();
    const SolaConfig cfg = SolaConfig::quadratic(basis.size);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_sola(model, basis, cfg, Eigen::Vector2d(5.0, -5.0), {1e-3, 10.0}));
    }
}
BENCHMARK(BM_SimulateSola)->Unit(benchmark::kMillisecond);

void BM_VerifyGammaGrid(benchmark::State& state) {
    const DynamicsModel model = example_one();
    const CostConfig cfg = CostConfig::identity(2, 1, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_gamma_over_grid(model, cfg, Box::symmetric(2, 5.0), 51));
    }
}
BENCHMARK(BM_VerifyGammaGrid)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
