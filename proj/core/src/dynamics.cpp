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

#include "hjbcf/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "hjbcf/errors.hpp"

namespace hjbcf {

namespace {

std::string shape_message(const std::string& model, const std::string& what, Eigen::Index got_rows,
                          Eigen::Index got_cols, int want_rows, int want_cols) {
    std::ostringstream os;
    os << model << ": " << what << " has shape " << got_rows << "x" << got_cols << ", expected "
       << want_rows << "x" << want_cols;
    return os.str();
}

} // namespace

DynamicsModel::DynamicsModel(std::string name, int state_dim, int input_dim, DriftFn drift,
                             InputMatrixFn input_matrix)
    : name_(std::move(name)),
      state_dim_(state_dim),
      input_dim_(input_dim),
      drift_(std::move(drift)),
      input_matrix_(std::move(input_matrix)) {
    if (state_dim_ <= 0 || input_dim_ <= 0) {
        throw UsageError(name_ + ": state and input dimensions must be positive");
    }
    if (!drift_ || !input_matrix_) {
        throw UsageError(name_ + ": drift and input matrix callables are required");
    }
}

void DynamicsModel::check_state(const StateVector& x) const {
    if (x.size() != state_dim_) {
        throw UsageError(shape_message(name_, "state", x.size(), 1, state_dim_, 1));
    }
    if (!x.allFinite()) {
        throw UsageError(name_ + ": state contains non-finite entries");
    }
}

Eigen::VectorXd DynamicsModel::drift(const StateVector& x) const {
    check_state(x);
    Eigen::VectorXd fx = drift_(x);
    if (fx.size() != state_dim_) {
        throw UsageError(shape_message(name_, "drift", fx.size(), 1, state_dim_, 1));
    }
    if (!fx.allFinite()) {
        throw NumericalDomainError(name_ + ": drift is not finite at the requested state");
    }
    return fx;
}

Eigen::MatrixXd DynamicsModel::input_matrix(const StateVector& x) const {
    check_state(x);
    Eigen::MatrixXd gx = input_matrix_(x);
    if (gx.rows() != state_dim_ || gx.cols() != input_dim_) {
        throw UsageError(
            shape_message(name_, "input matrix", gx.rows(), gx.cols(), state_dim_, input_dim_));
    }
    if (!gx.allFinite()) {
        throw NumericalDomainError(name_ + ": input matrix is not finite at the requested state");
    }
    return gx;
}

Eigen::MatrixXd DynamicsModel::augmented(const StateVector& x) const {
    Eigen::MatrixXd P(state_dim_, input_dim_ + 1);
    P.col(0) = drift(x);
    P.rightCols(input_dim_) = input_matrix(x);
    return P;
}

Eigen::MatrixXd DynamicsModel::gram(const StateVector& x) const {
    const Eigen::MatrixXd P = augmented(x);
    return P * P.transpose();
}

Eigen::VectorXd DynamicsModel::vector_field(const StateVector& x, const Eigen::VectorXd& tau) const {
    if (tau.size() != input_dim_) {
        throw UsageError(shape_message(name_, "control", tau.size(), 1, input_dim_, 1));
    }
    return drift(x) + input_matrix(x) * tau;
}

DynamicsModel example_one() {
    auto drift = [](const StateVector& x) {
        const double c = std::cos(2.0 * x(0)) + 2.0;
        Eigen::VectorXd f(2);
        f << -x(0) + x(1), -0.5 * x(0) - 0.5 * x(1) * (1.0 - c * c);
        return f;
    };
    auto input = [](const StateVector& x) {
        Eigen::MatrixXd g(2, 1);
        g << 0.0, std::cos(2.0 * x(0)) + 2.0;
        return g;
    };
    return DynamicsModel("example-I", 2, 1, drift, input);
}

DynamicsModel example_two(const ExampleTwoParams& p) {
    if (p.lambda2 == 0.0) {
        throw UsageError("example-II: lambda2 must be nonzero");
    }
    auto drift = [p](const StateVector& x) {
        const double shifted = x(1) + p.lambda2;
        if (std::abs(shifted) < 1e-12) {
            throw NumericalDomainError("example-II: state lies on the singular surface x2 = -lambda2");
        }
        Eigen::VectorXd f(2);
        f << x(1) + p.lambda1 * x(0) * std::cos(1.0 / shifted) +
                 p.lambda3 * x(1) * std::sin(p.lambda4 * x(0) * x(1)),
            0.0;
        return f;
    };
    auto input = [](const StateVector&) {
        Eigen::MatrixXd g(2, 1);
        g << 0.0, 1.0;
        return g;
    };
    return DynamicsModel("example-II", 2, 1, drift, input);
}

DynamicsModel example_three() {
    auto drift = [](const StateVector& x) {
        const double x1 = x(0);
        const double x2 = x(1);
        Eigen::VectorXd f(2);
        f << -(29.0 * x1 + 87.0 * x1 * x2 * x2) / 8.0 - (2.0 * x2 + 3.0 * x2 * x1 * x1) / 4.0,
            -(x1 + 3.0 * x1 * x2 * x2) / 4.0;
        return f;
    };
    auto input = [](const StateVector&) {
        // Columns: u1, u2, disturbance d.
        Eigen::MatrixXd g(2, 3);
        g << 1.0, 0.0, 0.5,
             0.0, 3.0, 1.0;
        return g;
    };
    return DynamicsModel("example-III", 2, 3, drift, input);
}

DynamicsModel builtin_example(ExampleId id, std::optional<ExampleTwoParams> params) {
    switch (id) {
    case ExampleId::I:
        if (params) {
            throw UsageError("example-I takes no parameters");
        }
        return example_one();
    case ExampleId::II:
        if (!params) {
            throw UsageError("example-II requires lambda parameters (use a case preset)");
        }
        return example_two(*params);
    case ExampleId::III:
        if (params) {
            throw UsageError("example-III takes no parameters");
        }
        return example_three();
    }
    throw UsageError("unknown example id");
}

ExampleId parse_example_id(const std::string& text) {
    if (text == "I" || text == "1") {
        return ExampleId::I;
    }
    if (text == "II" || text == "2") {
        return ExampleId::II;
    }
    if (text == "III" || text == "3") {
        return ExampleId::III;
    }
    throw UsageError("unknown example id '" + text + "' (expected I, II or III)");
}

std::string to_string(ExampleId id) {
    switch (id) {
    case ExampleId::I:
        return "I";
    case ExampleId::II:
        return "II";
    case ExampleId::III:
        return "III";
    }
    return "?";
}

} // namespace hjbcf
