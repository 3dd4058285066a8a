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

#ifndef SUPERDIR_IMPEDANCE_HPP
#define SUPERDIR_IMPEDANCE_HPP

#include "superdir/em_core.hpp"
#include "superdir/measurement.hpp"

#include <Eigen/Dense>

#include <span>

namespace superdir
{
    // Free-space wave impedance mu0 * c in ohms
    inline constexpr double free_space_impedance = 376.730313668;

    /*!MD
    # ImpedanceMatrix
    Real, symmetric, normalized impedance coupling matrix of an array.

    - `values` holds z_mn divided by the self term, so the diagonal is exactly 1.
    - `self_term` is the raw self term before normalization: the element's radiated power
      relative to an isotropic radiator, (1/4pi) * integral of |g|^2 over the sphere. It is
      2/3 for the ideal dipole and 1 for isotropic elements. Directivity and gain divide by
      it, which keeps absolute values (a single dipole has D = 1.5).
    MD!*/
    struct ImpedanceMatrix
    {
        Eigen::MatrixXd values;
        double self_term = 1.0;

        int size() const { return static_cast<int>(values.rows()); }
    };

    // Complex port impedance matrix of the surrogate network, in ohms
    struct PortImpedanceMatrix
    {
        Eigen::MatrixXcd values;
        cdouble self_impedance;
        bool synthetic = false; // true for the isotropic stand-in network

        int size() const { return static_cast<int>(values.rows()); }
    };

    // Quadrature over a full-sphere grid, then diagonal normalization
    ImpedanceMatrix z_full(const ArrayGeometry &geom, const AngularGrid &grid);

    // sin(k d |m-n|) / (k d |m-n|); isotropic elements only
    ImpedanceMatrix z_isotropic_closed(const ArrayGeometry &geom);

    // H-plane-only impedance, evaluated with the array laid along the in-plane (y) axis:
    // z_mn = (1/2pi) sum_phi w |g|^2 exp(j k (m-n) d sin(phi)). Equals J0(k d |m-n|).
    ImpedanceMatrix z_hplane(const ArrayGeometry &geom, const AngularGrid &grid);

    // Full-sphere impedance assembled plane by plane: analytic per-theta-plane kernels
    // weighted by |g|^2 sin(theta) (sin^3 for the dipole) and integrated in cos(theta).
    // Independent route to z_full used as a cross-check.
    ImpedanceMatrix z_plane_weighted(const ArrayGeometry &geom, int n_theta = 64);

    // Impedance from an isolated amplitude pattern and per-position phase patterns:
    // z_ij = sum_phi Lambda(phi) exp(j Psi_i) exp(-j Psi_j), then normalized.
    ImpedanceMatrix z_from_measurements(const PatternMeasurement &amplitude,
                                        std::span<const PatternMeasurement> phases,
                                        AmplitudeKind kind = AmplitudeKind::power);

    // Half-wave dipole self impedance from the induced-EMF integral (73.08 + j42.5 ohm)
    cdouble half_wave_self_impedance();

    // Induced-EMF mutual impedance between parallel side-by-side half-wave dipoles
    cdouble half_wave_mutual_impedance(double spacing);

    PortImpedanceMatrix port_impedance_emf(const ArrayGeometry &geom);

    // Labeled stand-in for isotropic elements: 73.08 sinc(kd) + j 42.21 sinc(2kd)
    PortImpedanceMatrix port_impedance_synthetic(const ArrayGeometry &geom);

    // Dispatch on element kind
    PortImpedanceMatrix port_impedance(const ArrayGeometry &geom);

} // namespace superdir

#endif
