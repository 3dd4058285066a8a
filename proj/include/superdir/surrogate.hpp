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

#ifndef SUPERDIR_SURROGATE_HPP
#define SUPERDIR_SURROGATE_HPP

#include "superdir/coupling_matrix.hpp"
#include "superdir/em_core.hpp"
#include "superdir/impedance.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace superdir
{
    /*!MD
    # FieldMatrix
    Sampled far fields, one column per antenna (or per excited port).

    Rows are interleaved by grid point: E_theta(p1), E_phi(p1), E_theta(p2), ...
    so the matrix has 2P rows for P grid points.
    MD!*/
    struct FieldMatrix
    {
        Eigen::MatrixXcd values;
        AngularGrid grid;

        int ports() const { return static_cast<int>(values.cols()); }
        std::size_t points() const { return grid.size(); }
    };

    enum class TerminationConvention
    {
        conjugate_match, // Z_L = conj(Z_self)
        self_match,      // Z_L = Z_self
        custom
    };

    std::string to_string(TerminationConvention c);
    TerminationConvention termination_from_string(const std::string &name);

    struct TerminationSpec
    {
        cdouble load;
        TerminationConvention convention = TerminationConvention::conjugate_match;

        static TerminationSpec conjugate_match(const PortImpedanceMatrix &zc);
        static TerminationSpec self_match(const PortImpedanceMatrix &zc);

        // Rejects loads with negative resistance
        static TerminationSpec custom(cdouble load);
    };

    // Column m: element pattern times exp(+j k r_hat . r_m) at every grid point
    FieldMatrix isolated_fields(const ArrayGeometry &geom, const AngularGrid &grid);

    // Port currents (Z_c + Z_L I)^-1 for unit source voltages, scaled so the mean
    // diagonal is 1. This is the surrogate's ground-truth C.
    CouplingMatrix port_coupling(const PortImpedanceMatrix &zc, const TerminationSpec &term);

    struct CoupledFields
    {
        FieldMatrix isolated; // E_s
        FieldMatrix coupled;  // E_c = E_s C_true
        CouplingMatrix c_true;
    };

    CoupledFields coupled_fields(const ArrayGeometry &geom, const AngularGrid &grid,
                                 const PortImpedanceMatrix &zc, const TerminationSpec &term);

    // Convenience: port network from the element kind, conjugate-matched loads
    CoupledFields coupled_fields(const ArrayGeometry &geom, const AngularGrid &grid);

    // E_s (C a), length 2P in the FieldMatrix row layout
    Eigen::VectorXcd radiated_pattern(const Eigen::VectorXcd &excitation, const CouplingMatrix &c,
                                      const FieldMatrix &es);

    Eigen::VectorXcd radiated_pattern(const Eigen::VectorXcd &excitation, const CouplingMatrix &c,
                                      const ArrayGeometry &geom, const AngularGrid &grid);

    // |E_theta|^2 + |E_phi|^2 per grid point
    std::vector<double> power_pattern(const Eigen::VectorXcd &field);

} // namespace superdir

#endif
