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

#ifndef HJBCF_DYNAMICS_HPP
#define HJBCF_DYNAMICS_HPP

#include <functional>
#include <optional>
#include <string>

#include <Eigen/Dense>

namespace hjbcf {

using StateVector = Eigen::VectorXd;

/**
 * @brief Input-affine plant  xdot = f(x) + g(x) tau.
 *
 * The model owns two pure callables: the drift f : R^m -> R^m and the input
 * matrix g : R^m -> R^{m x n}. Every evaluation checks the declared shapes and
 * rejects non-finite results, so downstream controllers can assume clean data.
 * The equilibrium is assumed to be the origin, f(0) = 0.
 *
 * Instances are immutable once built and safe to share between threads.
 */
class DynamicsModel {
public:
    using DriftFn = std::function<Eigen::VectorXd(const StateVector&)>;
    using InputMatrixFn = std::function<Eigen::MatrixXd(const StateVector&)>;

    DynamicsModel(std::string name, int state_dim, int input_dim, DriftFn drift,
                  InputMatrixFn input_matrix);

    const std::string& name() const noexcept { return name_; }
    int state_dim() const noexcept { return state_dim_; }
    int input_dim() const noexcept { return input_dim_; }

    /// f(x), length m.
    Eigen::VectorXd drift(const StateVector& x) const;

    /// g(x), shape m x n.
    Eigen::MatrixXd input_matrix(const StateVector& x) const;

    /// P(x) = [f(x) | g(x)], shape m x (n+1).
    Eigen::MatrixXd augmented(const StateVector& x) const;

    /// P(x) P(x)^T = f f^T + g g^T.
    Eigen::MatrixXd gram(const StateVector& x) const;

    /// Closed-loop vector field f(x) + g(x) tau.
    Eigen::VectorXd vector_field(const StateVector& x, const Eigen::VectorXd& tau) const;

private:
    void check_state(const StateVector& x) const;

    std::string name_;
    int state_dim_;
    int input_dim_;
    DriftFn drift_;
    InputMatrixFn input_matrix_;
};

// Built-in benchmark systems.

enum class ExampleId { I, II, III };

/// Parameters of the second benchmark system. lambda2 must be nonzero.
struct ExampleTwoParams {
    double lambda1{0.0};
    double lambda2{1.0};
    double lambda3{0.0};
    double lambda4{0.0};

    static ExampleTwoParams case_one() { return {-1.0, -100.0, 0.0, -100.0}; }
    static ExampleTwoParams case_two() { return {-0.2, 100.0, 1.0, -1.0}; }
};

/// Nonlinear benchmark with state-dependent input gain cos(2 x1) + 2. m = 2, n = 1.
DynamicsModel example_one();

/// Benchmark with a singular surface at x2 = -lambda2. m = 2, n = 1.
DynamicsModel example_two(const ExampleTwoParams& params);

/// Two-player disturbance benchmark with tau = [u1, u2, d]. m = 2, n = 3.
DynamicsModel example_three();

DynamicsModel builtin_example(ExampleId id, std::optional<ExampleTwoParams> params = std::nullopt);

ExampleId parse_example_id(const std::string& text);
std::string to_string(ExampleId id);

} // namespace hjbcf

#endif // HJBCF_DYNAMICS_HPP
