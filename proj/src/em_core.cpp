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

#include "superdir/em_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace superdir
{
    std::string to_string(ElementKind kind)
    {
        return kind == ElementKind::isotropic ? "isotropic" : "ideal_dipole";
    }

    std::string to_string(ArrayAxis axis)
    {
        return axis == ArrayAxis::z ? "z" : "y";
    }

    ElementKind element_kind_from_string(const std::string &name)
    {
        if (name == "isotropic")
            return ElementKind::isotropic;
        if (name == "ideal_dipole")
            return ElementKind::ideal_dipole;
        throw std::invalid_argument("Unknown element kind '" + name + "' (expected isotropic or ideal_dipole).");
    }

    ArrayAxis array_axis_from_string(const std::string &name)
    {
        if (name == "z")
            return ArrayAxis::z;
        if (name == "y")
            return ArrayAxis::y;
        throw std::invalid_argument("Unknown array axis '" + name + "' (expected z or y).");
    }

    Eigen::Vector3d Direction::unit_vector() const
    {
        const double st = std::sin(theta);
        return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
    }

    Direction Direction::from_radians(double theta, double phi)
    {
        if (!std::isfinite(theta) || !std::isfinite(phi))
            throw std::invalid_argument("Direction angles must be finite.");
        if (theta < -1e-12 || theta > pi + 1e-12)
            throw std::invalid_argument("Elevation theta must lie in [0, pi].");
        theta = std::clamp(theta, 0.0, pi);

        phi = std::remainder(phi, 2.0 * pi); // [-pi, pi]
        if (phi <= -pi)
            phi += 2.0 * pi;
        return {theta, phi};
    }

    Direction Direction::from_degrees(double theta_deg, double phi_deg)
    {
        return from_radians(deg2rad(theta_deg), deg2rad(phi_deg));
    }

    ArrayGeometry::ArrayGeometry(int element_count, double spacing, ElementKind element,
                                 ArrayAxis axis, double dipole_length)
        : element_count_(element_count), spacing_(spacing), element_(element), axis_(axis),
          dipole_length_(dipole_length)
    {
        if (element_count < 1)
            throw std::invalid_argument("Array must have at least one element.");
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw std::invalid_argument("Element spacing must be positive.");
        if (!(dipole_length > 0.0))
            throw std::invalid_argument("Dipole length must be positive.");
    }

    Eigen::Vector3d ArrayGeometry::position(int m) const
    {
        if (m < 0 || m >= element_count_)
            throw std::out_of_range("Element index out of range.");
        const double offset = m * spacing_;
        if (axis_ == ArrayAxis::z)
            return {0.0, 0.0, offset};
        return {0.0, offset, 0.0};
    }

    double ArrayGeometry::projected_position(const Direction &dir, int m) const
    {
        const double along = axis_ == ArrayAxis::z
                                 ? std::cos(dir.theta)
                                 : std::sin(dir.theta) * std::sin(dir.phi);
        return along * m * spacing_;
    }

    double AngularGrid::total_weight() const
    {
        double sum = 0.0;
        for (const auto &p : points)
            sum += p.weight;
        return sum;
    }

    double AngularGrid::nominal_measure() const
    {
        return kind == GridKind::full_sphere ? 4.0 * pi : 2.0 * pi;
    }

    PolarizedGain element_gain(ElementKind kind, const Direction &dir)
    {
        if (kind == ElementKind::isotropic)
            return {1.0, 0.0};
        return {std::sin(dir.theta), 0.0};
    }

    Eigen::VectorXcd steering_vector(const ArrayGeometry &geom, const Direction &dir)
    {
        const cdouble g = element_gain(geom.element(), dir).theta;
        Eigen::VectorXcd e(geom.element_count());
        for (int m = 0; m < geom.element_count(); ++m)
            e[m] = g * std::polar(1.0, wavenumber * geom.projected_position(dir, m));
        return e;
    }

    std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n)
    {
        if (n < 1)
            throw std::invalid_argument("Gauss-Legendre order must be at least 1.");

        std::vector<double> x(n), w(n);

        // Returns (P_n(z), P_n'(z))
        auto legendre = [n](double z)
        {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j)
            {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            return std::pair{p1, n * (z * p1 - p2) / (z * z - 1.0)};
        };

        for (int i = 0; i < (n + 1) / 2; ++i)
        {
            double z = std::cos(pi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it)
            {
                const auto [p, dp] = legendre(z);
                const double step = p / dp;
                z -= step;
                if (std::abs(step) < 1e-16)
                    break;
            }
            const double dp = legendre(z).second;
            x[i] = -z;
            x[n - 1 - i] = z;
            w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
        if (n % 2 == 1)
            x[n / 2] = 0.0;
        return {x, w};
    }

    AngularGrid sphere_grid(int n_theta, int n_phi)
    {
        if (n_theta < 2 || n_phi < 2)
            throw std::invalid_argument("Sphere grid needs n_theta >= 2 and n_phi >= 2.");

        const auto [u, wu] = gauss_legendre(n_theta);
        const double dphi = 2.0 * pi / n_phi;

        AngularGrid grid;
        grid.kind = GridKind::full_sphere;
        grid.points.reserve(static_cast<std::size_t>(n_theta) * n_phi);

        // theta ascending means cos(theta) descending
        for (int i = n_theta - 1; i >= 0; --i)
        {
            const double theta = std::acos(u[i]);
            for (int j = 0; j < n_phi; ++j)
            {
                const double phi = -pi + (j + 1) * dphi;
                grid.points.push_back({Direction{theta, phi}, wu[i] * dphi});
            }
        }
        return grid;
    }

    std::vector<double> hplane_azimuths(double step_deg)
    {
        if (!(step_deg > 0.0))
            throw std::invalid_argument("H-plane step must be positive.");
        const double count = 360.0 / step_deg;
        const double rounded = std::round(count);
        if (std::abs(count - rounded) > 1e-9 * rounded)
            throw std::invalid_argument("H-plane step must divide 360 degrees evenly.");

        const int n = static_cast<int>(rounded);
        std::vector<double> phi_deg(n);
        for (int j = 0; j < n; ++j)
            phi_deg[j] = -180.0 + (j + 1) * step_deg;
        return phi_deg;
    }

    AngularGrid hplane_grid(double step_deg)
    {
        return hplane_points(hplane_azimuths(step_deg));
    }

    AngularGrid hplane_points(const std::vector<double> &phi_deg)
    {
        if (phi_deg.empty())
            throw std::invalid_argument("H-plane point list is empty.");

        AngularGrid grid;
        grid.kind = GridKind::h_plane;
        const double w = 2.0 * pi / static_cast<double>(phi_deg.size());
        for (double p : phi_deg)
            grid.points.push_back({Direction::from_radians(pi / 2.0, deg2rad(p)), w});
        return grid;
    }

    bool in_h_plane(const Direction &dir, double tol)
    {
        return std::abs(dir.theta - pi / 2.0) <= tol;
    }

} // namespace superdir
