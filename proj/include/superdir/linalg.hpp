// SPDX-License-Identifier: Apache-2.0
//
// superdir - superdirective beamforming for compact linear antenna arrays
// Copyright (C) 2026 The superdir authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SUPERDIR_LINALG_HPP
#define SUPERDIR_LINALG_HPP

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string_view>

namespace superdir
{
    // Raised when a matrix is too ill-conditioned (or rank deficient) to invert without
    // explicit regularization.
    class numerical_gate_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    inline constexpr double default_condition_limit = 1e12;

    struct SolveOptions
    {
        // Tikhonov parameter; when set, solves (A + eps*I) x = b and skips the gate
        std::optional<double> regularization;
        double condition_limit = default_condition_limit;
    };

    // 2-norm condition number from the singular values; +inf for singular input
    double condition_number(const Eigen::MatrixXcd &a);
    double condition_number(const Eigen::MatrixXd &a);

    // Solves A X = B with a column-pivoting QR after checking cond(A) against the gate.
    // 'what' names the matrix in the error message.
    Eigen::MatrixXcd gated_solve(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b,
                                 const SolveOptions &opts, std::string_view what);

    Eigen::VectorXcd gated_solve(const Eigen::MatrixXcd &a, const Eigen::VectorXcd &b,
                                 const SolveOptions &opts, std::string_view what);

} // namespace superdir

#endif
