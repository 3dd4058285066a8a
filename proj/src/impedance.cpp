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

#include "superdir/impedance.hpp"

#include <gsl/gsl_sf_expint.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace superdir
{
    namespace
    {
        // Real part of a Hermitian accumulation, scaled to unit diagonal
        ImpedanceMatrix normalize(const Eigen::MatrixXcd &raw)
        {
            const Eigen::Index m = raw.rows();
            ImpedanceMatrix z;
            z.values = raw.real();
            z.self_term = z.values.diagonal().mean();
            if (!(z.self_term > 0.0))
                throw std::invalid_argument("Impedance self term is not positive; the pattern radiates no power.");

            const Eigen::VectorXd scale = z.values.diagonal().cwiseSqrt().cwiseInverse();
            z.values = scale.asDiagonal() * z.values * scale.asDiagonal();
            z.values = 0.5 * (z.values + z.values.transpose());
            for (Eigen::Index i = 0; i < m; ++i)
                z.values(i, i) = 1.0;
            return z;
        }

        double sinc(double x)
        {
            return x == 0.0 ? 1.0 : std::sin(x) / x;
        }

        double element_power(ElementKind kind, const Direction &dir)
        {
            const auto g = element_gain(kind, dir);
            return std::norm(g.theta) + std::norm(g.phi);
        }

        // Toeplitz matrix from first-row values
        Eigen::MatrixXd toeplitz(const std::vector<double> &row)
        {
            const auto m = static_cast<Eigen::Index>(row.size());
            Eigen::MatrixXd t(m, m);
            for (Eigen::Index i = 0; i < m; ++i)
                for (Eigen::Index j = 0; j < m; ++j)
                    t(i, j) = row[static_cast<std::size_t>(std::abs(i - j))];
            return t;
        }
    }

    ImpedanceMatrix z_full(const ArrayGeometry &geom, const AngularGrid &grid)
    {
        if (grid.kind != GridKind::full_sphere)
            throw std::invalid_argument("z_full requires a full-sphere grid.");

        const int m = geom.element_count();
        const auto p = static_cast<Eigen::Index>(grid.size());

        // Rows: sqrt(w |g|^2 / 4pi) * exp(j k r_hat . r_m); Z = E^H E conjugated
        Eigen::MatrixXcd e(p, m);
        for (Eigen::Index i = 0; i < p; ++i)
        {
            const auto &pt = grid.points[static_cast<std::size_t>(i)];
            const double amp = std::sqrt(pt.weight * element_power(geom.element(), pt.direction) / (4.0 * pi));
            for (int n = 0; n < m; ++n)
                e(i, n) = amp * std::polar(1.0, wavenumber * geom.projected_position(pt.direction, n));
        }

        // z_mn = sum_p w |g|^2 exp(j k r.r_m) exp(-j k r.r_n) = (E^T E^*)_mn
        const Eigen::MatrixXcd raw = e.transpose() * e.conjugate();
        return normalize(raw);
    }

    ImpedanceMatrix z_isotropic_closed(const ArrayGeometry &geom)
    {
        if (geom.element() != ElementKind::isotropic)
            throw std::invalid_argument("The closed-form sinc impedance applies to isotropic elements only.");

        std::vector<double> row(static_cast<std::size_t>(geom.element_count()));
        for (std::size_t k = 0; k < row.size(); ++k)
            row[k] = sinc(wavenumber * geom.spacing() * static_cast<double>(k));

        return {toeplitz(row), 1.0};
    }

    ImpedanceMatrix z_hplane(const ArrayGeometry &geom, const AngularGrid &grid)
    {
        if (grid.kind != GridKind::h_plane)
            throw std::invalid_argument("z_hplane requires an H-plane grid.");

        const int m = geom.element_count();
        const auto p = static_cast<Eigen::Index>(grid.size());

        Eigen::MatrixXcd e(p, m);
        for (Eigen::Index i = 0; i < p; ++i)
        {
            const auto &pt = grid.points[static_cast<std::size_t>(i)];
            const double amp = std::sqrt(pt.weight * element_power(geom.element(), pt.direction) / (2.0 * pi));
            const double along = std::sin(pt.direction.phi); // in-plane array axis
            for (int n = 0; n < m; ++n)
                e(i, n) = amp * std::polar(1.0, wavenumber * n * geom.spacing() * along);
        }
        const Eigen::MatrixXcd raw = e.transpose() * e.conjugate();
        return normalize(raw);
    }

    ImpedanceMatrix z_plane_weighted(const ArrayGeometry &geom, int n_theta)
    {
        const auto [u, w] = gauss_legendre(n_theta);
        const int m = geom.element_count();

        std::vector<double> row(static_cast<std::size_t>(m), 0.0);
        for (int i = 0; i < n_theta; ++i)
        {
            const double theta = std::acos(u[i]);
            const double sin_theta = std::sqrt(std::max(0.0, 1.0 - u[i] * u[i]));
            const double weight = 0.5 * w[i] * element_power(geom.element(), Direction{theta, 0.0});

            for (int k = 0; k < m; ++k)
            {
                const double kd = wavenumber * geom.spacing() * k;
                // Azimuthal average of exp(j k r_hat . (r_m - r_n)) on this theta plane
                const double kernel = geom.axis() == ArrayAxis::z
                                          ? std::cos(kd * u[i])
                                          : std::cyl_bessel_j(0.0, kd * sin_theta);
                row[static_cast<std::size_t>(k)] += weight * kernel;
            }
        }
        return normalize(toeplitz(row).cast<cdouble>());
    }

    ImpedanceMatrix z_from_measurements(const PatternMeasurement &amplitude,
                                        std::span<const PatternMeasurement> phases,
                                        AmplitudeKind kind)
    {
        if (phases.empty())
            throw std::invalid_argument("At least one phase pattern is required.");

        std::vector<PatternMeasurement> all(phases.begin(), phases.end());
        all.push_back(amplitude);
        check_common_grid(all);

        const auto m = static_cast<Eigen::Index>(phases.size());
        const auto p = static_cast<Eigen::Index>(amplitude.size());

        Eigen::MatrixXcd e(p, m);
        for (Eigen::Index i = 0; i < p; ++i)
        {
            const double lambda = power_of(amplitude.amplitude[static_cast<std::size_t>(i)], kind);
            const double amp = std::sqrt(lambda);
            for (Eigen::Index n = 0; n < m; ++n)
                e(i, n) = amp * std::polar(1.0, deg2rad(phases[static_cast<std::size_t>(n)].phase_deg[static_cast<std::size_t>(i)]));
        }
        const Eigen::MatrixXcd raw = e.transpose() * e.conjugate();

        for (Eigen::Index i = 0; i < m; ++i)
            if (std::abs(raw(i, i).imag()) > 1e-10 * std::abs(raw(i, i).real()))
                throw std::runtime_error("Impedance accumulation lost Hermitian structure.");

        ImpedanceMatrix z = normalize(raw);
        z.self_term = 1.0; // measured units carry no absolute scale
        return z;
    }

    cdouble half_wave_self_impedance()
    {
        const double two_pi = 2.0 * pi;
        const double scale = free_space_impedance / (4.0 * pi);
        const double r = std::numbers::egamma + std::log(two_pi) - gsl_sf_Ci(two_pi);
        const double x = gsl_sf_Si(two_pi);
        return {scale * r, scale * x};
    }

    cdouble half_wave_mutual_impedance(double spacing)
    {
        if (!(spacing > 0.0))
            throw std::invalid_argument("Dipole separation must be positive.");

        const double l = 0.5;
        const double root = std::sqrt(spacing * spacing + l * l);
        const double u0 = wavenumber * spacing;
        const double u1 = wavenumber * (root + l);
        const double u2 = wavenumber * (root - l);
        const double scale = free_space_impedance / (4.0 * pi);

        const double r = scale * (2.0 * gsl_sf_Ci(u0) - gsl_sf_Ci(u1) - gsl_sf_Ci(u2));
        const double x = -scale * (2.0 * gsl_sf_Si(u0) - gsl_sf_Si(u1) - gsl_sf_Si(u2));
        return {r, x};
    }

    PortImpedanceMatrix port_impedance_emf(const ArrayGeometry &geom)
    {
        if (geom.element() != ElementKind::ideal_dipole)
            throw std::invalid_argument("The induced-EMF network requires dipole elements.");
        if (std::abs(geom.dipole_length() - 0.5) > 1e-12)
            throw std::invalid_argument("The induced-EMF network supports half-wave dipoles only.");
        if (geom.axis() != ArrayAxis::y)
            throw std::invalid_argument("The induced-EMF network models side-by-side dipoles; use array axis y.");

        const int m = geom.element_count();
        PortImpedanceMatrix zc;
        zc.self_impedance = half_wave_self_impedance();
        zc.values.resize(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                zc.values(i, j) = i == j ? zc.self_impedance
                                         : half_wave_mutual_impedance(std::abs(i - j) * geom.spacing());
        return zc;
    }

    PortImpedanceMatrix port_impedance_synthetic(const ArrayGeometry &geom)
    {
        constexpr double resistance = 73.08;
        constexpr double reactance = 42.21;

        const int m = geom.element_count();
        PortImpedanceMatrix zc;
        zc.synthetic = true;
        zc.self_impedance = {resistance, reactance};
        zc.values.resize(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
            {
                const double kd = wavenumber * geom.spacing() * std::abs(i - j);
                zc.values(i, j) = {resistance * sinc(kd), reactance * sinc(2.0 * kd)};
            }
        return zc;
    }

    PortImpedanceMatrix port_impedance(const ArrayGeometry &geom)
    {
        return geom.element() == ElementKind::ideal_dipole ? port_impedance_emf(geom)
                                                           : port_impedance_synthetic(geom);
    }

} // namespace superdir
