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

#include "hjbcf/linalg.hpp"

#include <cmath>
#include <string>

#include "hjbcf/errors.hpp"

namespace hjbcf::linalg {

bool is_symmetric(const Eigen::MatrixXd& A, double tol) {
    if (A.rows() != A.cols()) {
        return false;
    }
    const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    return (A - A.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

void require_spd(const Eigen::MatrixXd& A, const char* name) {
    if (A.rows() == 0 || A.rows() != A.cols()) {
        throw ConfigurationError(std::string(name) + " must be a non-empty square matrix");
    }
    if (!A.allFinite() || !is_symmetric(A)) {
        throw ConfigurationError(std::string(name) + " must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
        throw ConfigurationError(std::string(name) + " must be positive definite");
    }
}

Eigen::MatrixXd inverse_sqrt_spd(const Eigen::MatrixXd& R) {
    require_spd(R, "R");
    if (R.isDiagonal(0.0)) {
        return R.diagonal().cwiseSqrt().cwiseInverse().asDiagonal();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(R);
    const Eigen::VectorXd inv_root = eig.eigenvalues().cwiseSqrt().cwiseInverse();
    return eig.eigenvectors() * inv_root.asDiagonal() * eig.eigenvectors().transpose();
}

PseudoInverse pseudo_inverse(const Eigen::MatrixXd& A, double rel_tol) {
    PseudoInverse out;
    out.matrix = Eigen::MatrixXd::Zero(A.cols(), A.rows());
    if (A.size() == 0) {
        return out;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const double cutoff = rel_tol * sigma(0);
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > cutoff && sigma(i) > 0.0) {
            out.matrix += (1.0 / sigma(i)) * svd.matrixV().col(i) * svd.matrixU().col(i).transpose();
            ++out.rank;
        }
    }
    return out;
}

} // namespace hjbcf::linalg
