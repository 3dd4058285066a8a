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

#ifndef SUPERDIR_EM_CORE_HPP
#define SUPERDIR_EM_CORE_HPP

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace superdir
{
    using cdouble = std::complex<double>;

    inline constexpr double pi = std::numbers::pi;

    // All lengths are in wavelengths, so k = 2*pi
    inline constexpr double wavenumber = 2.0 * pi;

    inline constexpr double deg2rad(double deg) { return deg * pi / 180.0; }
    inline constexpr double rad2deg(double rad) { return rad * 180.0 / pi; }

    enum class ElementKind
    {
        isotropic,
        ideal_dipole // z-directed, g = sin(theta), theta-polarized
    };

    // Axis the elements are laid out along. Dipole elements always point along z, so
    // an array on y is the side-by-side (parallel dipole) configuration.
    enum class ArrayAxis
    {
        z,
        y
    };

    std::string to_string(ElementKind kind);
    std::string to_string(ArrayAxis axis);
    ElementKind element_kind_from_string(const std::string &name);
    ArrayAxis array_axis_from_string(const std::string &name);

    struct Direction
    {
        double theta = 0.0; // [0, pi]
        double phi = 0.0;   // (-pi, pi]

        Eigen::Vector3d unit_vector() const;

        // Validates theta and wraps phi into (-pi, pi]
        static Direction from_radians(double theta, double phi);
        static Direction from_degrees(double theta_deg, double phi_deg);
    };

    class ArrayGeometry
    {
    public:
        ArrayGeometry(int element_count, double spacing, ElementKind element,
                      ArrayAxis axis = ArrayAxis::z, double dipole_length = 0.5);

        int element_count() const { return element_count_; }
        double spacing() const { return spacing_; }
        ElementKind element() const { return element_; }
        ArrayAxis axis() const { return axis_; }
        double dipole_length() const { return dipole_length_; }

        // Zero-based: element m sits at m * d along the array axis
        Eigen::Vector3d position(int m) const;

        // r_hat . r_m
        double projected_position(const Direction &dir, int m) const;

    private:
        int element_count_;
        double spacing_;
        ElementKind element_;
        ArrayAxis axis_;
        double dipole_length_;
    };

    enum class GridKind
    {
        full_sphere,
        h_plane
    };

    struct GridPoint
    {
        Direction direction;
        double weight = 0.0;
    };

    struct AngularGrid
    {
        GridKind kind = GridKind::full_sphere;
        std::vector<GridPoint> points;

        std::size_t size() const { return points.size(); }
        double total_weight() const;

        // 4*pi for the sphere, 2*pi for the H-plane circle
        double nominal_measure() const;
    };

    struct PolarizedGain
    {
        cdouble theta;
        cdouble phi;
    };

    PolarizedGain element_gain(ElementKind kind, const Direction &dir);

    // e[m] = g(theta, phi) * exp(+j k r_hat . r_m)
    Eigen::VectorXcd steering_vector(const ArrayGeometry &geom, const Direction &dir);

    // Gauss-Legendre nodes and weights on [-1, 1], nodes ascending
    std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

    // Gauss-Legendre in cos(theta) x trapezoid in phi; weights sum to 4*pi
    AngularGrid sphere_grid(int n_theta, int n_phi);

    // Azimuths in degrees used by hplane_grid: -180 + step, ..., 180
    std::vector<double> hplane_azimuths(double step_deg);

    // theta = pi/2, phi from -180 (exclusive) to 180 (inclusive); weights sum to 2*pi
    AngularGrid hplane_grid(double step_deg);

    // H-plane points at arbitrary azimuths (degrees) with equal weights summing to 2*pi
    AngularGrid hplane_points(const std::vector<double> &phi_deg);

    bool in_h_plane(const Direction &dir, double tol = 1e-9);

} // namespace superdir

#endif
