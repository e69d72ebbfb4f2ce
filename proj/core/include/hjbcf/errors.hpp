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

#ifndef HJBCF_ERRORS_HPP
#define HJBCF_ERRORS_HPP

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace hjbcf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller supplied arguments with inconsistent dimensions or unknown identifiers.
class UsageError : public Error {
public:
    using Error::Error;
};

/// A model evaluation produced a non-finite value (e.g. a singular surface was hit).
class NumericalDomainError : public Error {
public:
    using Error::Error;
};

/// Invalid controller parameters, such as an R that is not symmetric positive definite.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// The state penalty Q(x) went negative beyond round-off at `state()`.
class GammaAdmissibilityError : public Error {
public:
    GammaAdmissibilityError(const std::string& what, Eigen::VectorXd state, double penalty)
        : Error(what), state_(std::move(state)), penalty_(penalty) {}

    const Eigen::VectorXd& state() const noexcept { return state_; }
    double penalty() const noexcept { return penalty_; }

private:
    Eigen::VectorXd state_;
    double penalty_;
};

/// A requested quantity is undefined because the control direction vanished.
class DegenerateStateError : public Error {
public:
    using Error::Error;
};

/// g(x) is rank deficient, so the pseudoinverse feedforward is ill-posed.
class IllPosedFeedforwardError : public Error {
public:
    using Error::Error;
};

/// An integrator stage produced a non-finite derivative or state.
class IntegrationBlowupError : public Error {
public:
    IntegrationBlowupError(const std::string& what, double time) : Error(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

} // namespace hjbcf

#endif // HJBCF_ERRORS_HPP
