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

#ifndef SUPERDIR_COUPLING_HPP
#define SUPERDIR_COUPLING_HPP

#include "superdir/coupling_matrix.hpp"
#include "superdir/measurement.hpp"
#include "superdir/surrogate.hpp"

#include <span>
#include <string>
#include <vector>

namespace superdir
{
    // Relative singular-value cutoff for the least-squares solves
    inline constexpr double rank_cutoff = 1e-12;

    enum class LeastSquaresPath
    {
        svd,              // default: singular-value solve with cutoff
        householder_qr,   // independent orthogonal factorization
        normal_equations, // squares the condition number; diagnostics only
    };

    std::string to_string(LeastSquaresPath path);

    struct CouplingEstimate
    {
        CouplingMatrix c;
        double residual = 0.0;       // ||E_s C - E_c||_F / ||E_c||_F
        double es_sigma_ratio = 1.0; // sigma_min / sigma_max of E_s
    };

    // Least-squares C minimizing ||E_s C - E_c||_F. Throws numerical_gate_error when
    // E_s is rank deficient and std::invalid_argument on mismatched grids.
    CouplingEstimate estimate_c_full(const FieldMatrix &es, const FieldMatrix &ec,
                                     LeastSquaresPath path = LeastSquaresPath::svd);

    // Fewest sample angles the reversal-symmetric solve accepts: M/2 (even), M (odd)
    int minimum_reduced_angles(int element_count);

    // P azimuths equally spaced over (0, 90] degrees
    std::vector<double> default_reduced_angles(int count);

    // Solve with column-reversal symmetry imposed through shared unknowns.
    // es and ec hold samples at the same few directions.
    CouplingEstimate estimate_c_reduced(const FieldMatrix &es, const FieldMatrix &ec);

    // Samples the surrogate at H-plane azimuths (degrees) and solves the reduced system
    CouplingEstimate estimate_c_reduced(const ArrayGeometry &geom, const std::vector<double> &phi_deg);

    // H-plane fields sqrt(Lambda) exp(j Psi) per record, E_phi rows zero. The 2 eta
    // prefactor is dropped; every downstream quantity is scale invariant.
    FieldMatrix fields_from_measurements(std::span<const PatternMeasurement> records,
                                         AmplitudeKind kind = AmplitudeKind::power);

    // Inverse of fields_from_measurements for one column (theta component only)
    PatternMeasurement measurement_from_field(const FieldMatrix &fields, int column,
                                              AmplitudeKind kind = AmplitudeKind::power);

} // namespace superdir

#endif
