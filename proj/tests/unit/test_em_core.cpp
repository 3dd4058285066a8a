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

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace superdir;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("element gain of the ideal dipole and isotropic element")
{
    const auto broadside = element_gain(ElementKind::ideal_dipole, Direction::from_degrees(90.0, 0.0));
    CHECK(broadside.theta == cdouble(1.0, 0.0));
    CHECK(broadside.phi == cdouble(0.0, 0.0));

    const auto axial = element_gain(ElementKind::ideal_dipole, Direction::from_degrees(0.0, 0.0));
    CHECK(std::abs(axial.theta) == 0.0);
    CHECK(std::abs(axial.phi) == 0.0);

    for (double t : {0.0, 33.0, 90.0, 180.0})
        for (double p : {-170.0, 0.0, 45.0, 180.0})
        {
            const auto g = element_gain(ElementKind::isotropic, Direction::from_degrees(t, p));
            CHECK(g.theta == cdouble(1.0, 0.0));
            CHECK(g.phi == cdouble(0.0, 0.0));
        }
}

TEST_CASE("steering vector phases")
{
    SECTION("quarter-wave endfire pair")
    {
        const ArrayGeometry geom(2, 0.25, ElementKind::isotropic);
        const auto e = steering_vector(geom, Direction::from_degrees(0.0, 0.0));
        CHECK_THAT(e(0).real(), WithinAbs(1.0, 1e-15));
        CHECK_THAT(e(1).real(), WithinAbs(0.0, 1e-15));
        CHECK_THAT(e(1).imag(), WithinAbs(1.0, 1e-15));
    }
    SECTION("broadside is in phase")
    {
        const ArrayGeometry geom(3, 0.37, ElementKind::isotropic);
        const auto e = steering_vector(geom, Direction::from_degrees(90.0, 12.0));
        for (int m = 0; m < 3; ++m)
        {
            CHECK_THAT(e(m).real(), WithinAbs(1.0, 1e-15));
            CHECK_THAT(e(m).imag(), WithinAbs(0.0, 1e-15));
        }
    }
    SECTION("dipole pair at broadside")
    {
        const ArrayGeometry geom(2, 0.5, ElementKind::ideal_dipole);
        const auto e = steering_vector(geom, Direction::from_degrees(90.0, 0.0));
        CHECK_THAT(std::abs(e(0) - 1.0), WithinAbs(0.0, 1e-15));
        CHECK_THAT(std::abs(e(1) - 1.0), WithinAbs(0.0, 1e-15));
    }
}

TEST_CASE("steering vector invariants hold across directions")
{
    for (auto axis : {ArrayAxis::z, ArrayAxis::y})
        for (auto kind : {ElementKind::isotropic, ElementKind::ideal_dipole})
        {
            const ArrayGeometry geom(5, 0.13, kind, axis);
            for (double t = 0.0; t <= 180.0; t += 15.0)
                for (double p = -165.0; p <= 180.0; p += 15.0)
                {
                    const Direction dir = Direction::from_degrees(t, p);
                    const auto e = steering_vector(geom, dir);
                    const double g = std::abs(element_gain(kind, dir).theta);
                    // Reference element sits at the origin
                    CHECK(e(0).imag() == 0.0);
                    CHECK(e(0).real() >= 0.0);
                    for (int m = 0; m < 5; ++m)
                        CHECK_THAT(std::abs(e(m)), WithinAbs(g, 1e-14));
                }
        }
}

TEST_CASE("array geometry positions")
{
    const ArrayGeometry z(4, 0.2, ElementKind::isotropic);
    for (int m = 0; m < 4; ++m)
    {
        CHECK(z.position(m).z() == m * 0.2);
        CHECK(z.position(m).x() == 0.0);
    }
    const ArrayGeometry y(3, 0.3, ElementKind::ideal_dipole, ArrayAxis::y);
    CHECK(y.position(2).y() == 2 * 0.3);
    CHECK(y.position(2).z() == 0.0);

    CHECK_THROWS_AS(ArrayGeometry(0, 0.5, ElementKind::isotropic), std::invalid_argument);
    CHECK_THROWS_AS(ArrayGeometry(2, 0.0, ElementKind::isotropic), std::invalid_argument);
    CHECK_THROWS_AS(ArrayGeometry(2, -0.1, ElementKind::isotropic), std::invalid_argument);
    CHECK_THROWS_AS(z.position(4), std::out_of_range);
}

TEST_CASE("direction validation and unit vector")
{
    CHECK_THROWS_AS(Direction::from_degrees(-1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Direction::from_degrees(181.0, 0.0), std::invalid_argument);
    CHECK_THAT(Direction::from_degrees(90.0, -180.0).phi, WithinAbs(pi, 1e-15));
    CHECK_THAT(Direction::from_degrees(90.0, 270.0).phi, WithinAbs(-pi / 2, 1e-15));
    for (double t : {0.0, 0.4, 1.7, pi})
        CHECK_THAT(Direction::from_radians(t, 2.2).unit_vector().norm(), WithinAbs(1.0, 1e-15));
}

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly")
{
    const auto [x, w] = gauss_legendre(10);
    for (int deg = 0; deg <= 19; ++deg)
    {
        double q = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            q += w[i] * std::pow(x[i], deg);
        const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
        CHECK_THAT(q, WithinAbs(exact, 1e-14));
    }
    CHECK(std::is_sorted(x.begin(), x.end()));
}

TEST_CASE("sphere grid weights and quadrature")
{
    const auto grid = sphere_grid(64, 128);
    CHECK(grid.size() == 8192);
    CHECK_THAT(grid.total_weight(), WithinRel(4.0 * pi, 1e-9));
    CHECK_THAT(grid.total_weight(), WithinRel(grid.nominal_measure(), 1e-9));

    const auto tiny = sphere_grid(2, 2);
    CHECK(tiny.size() == 4);
    CHECK_THAT(tiny.total_weight(), WithinRel(4.0 * pi, 1e-9));

    double s2 = 0.0;
    for (const auto &p : grid.points)
        s2 += p.weight * std::pow(std::sin(p.direction.theta), 2);
    CHECK_THAT(s2, WithinRel(8.0 * pi / 3.0, 1e-10));

    for (const auto &p : grid.points)
        CHECK(p.weight >= 0.0);

    CHECK_THROWS_AS(sphere_grid(1, 4), std::invalid_argument);
    CHECK_THROWS_AS(sphere_grid(4, 1), std::invalid_argument);
}

TEST_CASE("H-plane grid")
{
    const auto one = hplane_grid(1.0);
    CHECK(one.size() == 360);
    CHECK(hplane_grid(5.0).size() == 72);
    CHECK_THROWS_AS(hplane_grid(7.0), std::invalid_argument);
    CHECK_THROWS_AS(hplane_grid(0.0), std::invalid_argument);

    CHECK_THAT(one.total_weight(), WithinRel(2.0 * pi, 1e-9));
    for (const auto &p : one.points)
        CHECK(in_h_plane(p.direction));

    const auto phi = hplane_azimuths(90.0);
    REQUIRE(phi.size() == 4);
    CHECK(phi.front() == -90.0);
    CHECK(phi.back() == 180.0);
}
