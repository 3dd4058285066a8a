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

#ifndef SUPERDIR_COUPLING_MATRIX_HPP
#define SUPERDIR_COUPLING_MATRIX_HPP

#include <Eigen/Dense>

namespace superdir
{
    // Estimates above this condition number are flagged (but still returned)
    inline constexpr double coupling_condition_flag = 1e10;

    // Field coupling matrix C: column m holds the effective radiating currents when
    // only port m is driven. Not symmetric in general.
    struct CouplingMatrix
    {
        Eigen::MatrixXcd values;
        double condition = 1.0;

        int size() const { return static_cast<int>(values.rows()); }
        bool ill_conditioned() const { return !(condition <= coupling_condition_flag); }

        static CouplingMatrix identity(int m);
    };

    // Wraps a square matrix and records its condition number
    CouplingMatrix make_coupling_matrix(Eigen::MatrixXcd values);

    // max |c_ji - c_(M-1-j)(M-1-i)| / max |C|; zero for a reversal-symmetric matrix
    double column_symmetry_residual(const Eigen::MatrixXcd &c);

} // namespace superdir

#endif
