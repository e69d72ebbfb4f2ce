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

#ifndef HJBCF_LINALG_HPP
#define HJBCF_LINALG_HPP

#include <Eigen/Dense>

namespace hjbcf::linalg {

bool is_symmetric(const Eigen::MatrixXd& A, double tol = 1e-12);

/// Throws ConfigurationError unless A is symmetric with strictly positive eigenvalues.
void require_spd(const Eigen::MatrixXd& A, const char* name);

/**
 * Inverse of the symmetric principal square root, R^{-1/2}.
 *
 * Computed from the eigendecomposition R = V diag(r) V^T as V diag(1/sqrt(r)) V^T,
 * so for diagonal R it is exactly diag(1/sqrt(r_i)).
 */
Eigen::MatrixXd inverse_sqrt_spd(const Eigen::MatrixXd& R);

struct PseudoInverse {
    Eigen::MatrixXd matrix;
    Eigen::Index rank{0};
};

/// Moore-Penrose pseudoinverse by SVD; singular values below rel_tol * sigma_max count as zero.
PseudoInverse pseudo_inverse(const Eigen::MatrixXd& A, double rel_tol = 1e-10);

} // namespace hjbcf::linalg

#endif // HJBCF_LINALG_HPP
