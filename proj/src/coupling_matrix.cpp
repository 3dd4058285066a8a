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

#include "superdir/coupling_matrix.hpp"
#include "superdir/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace superdir
{
    CouplingMatrix CouplingMatrix::identity(int m)
    {
        return {Eigen::MatrixXcd::Identity(m, m), 1.0};
    }

    CouplingMatrix make_coupling_matrix(Eigen::MatrixXcd values)
    {
        if (values.rows() != values.cols() || values.rows() == 0)
            throw std::invalid_argument("Coupling matrix must be square and non-empty.");
        const double cond = condition_number(values);
        return {std::move(values), cond};
    }

    double column_symmetry_residual(const Eigen::MatrixXcd &c)
    {
        if (c.rows() != c.cols())
            throw std::invalid_argument("Symmetry residual needs a square matrix.");
        const Eigen::Index m = c.rows();
        const double scale = c.cwiseAbs().maxCoeff();
        if (m == 0 || scale == 0.0)
            return 0.0;

        double worst = 0.0;
        for (Eigen::Index j = 0; j < m; ++j)
            for (Eigen::Index i = 0; i < m; ++i)
                worst = std::max(worst, std::abs(c(j, i) - c(m - 1 - j, m - 1 - i)));
        return worst / scale;
    }

} // namespace superdir
