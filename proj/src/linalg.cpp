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

#include "superdir/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace superdir
{
    namespace
    {
        template <typename Matrix>
        double condition_from_svd(const Matrix &a)
        {
            if (a.size() == 0)
                return 1.0;
            Eigen::JacobiSVD<Matrix> svd(a);
            const auto &s = svd.singularValues();
            const double smax = s(0);
            const double smin = s(s.size() - 1);
            if (smin <= 0.0 || !std::isfinite(smin))
                return std::numeric_limits<double>::infinity();
            return smax / smin;
        }
    }

    double condition_number(const Eigen::MatrixXcd &a) { return condition_from_svd(a); }
    double condition_number(const Eigen::MatrixXd &a) { return condition_from_svd(a); }

    Eigen::MatrixXcd gated_solve(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b,
                                 const SolveOptions &opts, std::string_view what)
    {
        if (a.rows() != a.cols())
            throw std::invalid_argument(std::string(what) + " must be square.");
        if (a.rows() != b.rows())
            throw std::invalid_argument(std::string(what) + ": right-hand side has the wrong dimension.");

        Eigen::MatrixXcd lhs = a;
        if (opts.regularization)
        {
            if (!(*opts.regularization >= 0.0))
                throw std::invalid_argument("Regularization parameter must be non-negative.");
            lhs.diagonal().array() += *opts.regularization;
        }
        else
        {
            const double cond = condition_number(a);
            if (!(cond <= opts.condition_limit))
            {
                std::ostringstream msg;
                msg << what << " is ill-conditioned (condition number " << cond
                    << " exceeds " << opts.condition_limit
                    << "); supply an explicit regularization parameter to proceed.";
                throw numerical_gate_error(msg.str());
            }
        }
        return lhs.colPivHouseholderQr().solve(b);
    }

    Eigen::VectorXcd gated_solve(const Eigen::MatrixXcd &a, const Eigen::VectorXcd &b,
                                 const SolveOptions &opts, std::string_view what)
    {
        return gated_solve(a, Eigen::MatrixXcd(b), opts, what).col(0);
    }

} // namespace superdir
