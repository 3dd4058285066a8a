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
#include "superdir/surrogate.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace superdir;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    const AngularGrid &sphere()
    {
        static const AngularGrid g = sphere_grid(64, 128);
        return g;
    }

    AngularGrid single_point(double theta_deg, double phi_deg)
    {
        AngularGrid g;
        g.kind = GridKind::full_sphere;
        g.points.push_back({Direction::from_degrees(theta_deg, phi_deg), 4.0 * pi});
        return g;
    }

    double sigma_ratio(const Eigen::MatrixXcd &a)
    {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
        const auto &s = svd.singularValues();
        return s(s.size() - 1) / s(0);
    }

    // |c21 / c11| for a 2x2 symmetric port network loaded with conj(Z11): the inverse of
    // [[a, b], [b, a]] is [[a, -b], [-b, a]] / (a^2 - b^2)
    double pair_ratio(double d)
    {
        const cdouble z11 = half_wave_self_impedance();
        const cdouble a = z11 + std::conj(z11);
        const cdouble b = oracle::emf_mutual_impedance(d);
        return std::abs(b) / std::abs(a);
    }
}

TEST_CASE("isolated fields sample the element pattern with array phases")
{
    SECTION("single element equals the element pattern")
    {
        const ArrayGeometry geom(1, 0.5, ElementKind::ideal_dipole);
        const auto es = isolated_fields(geom, sphere());
        REQUIRE(es.values.rows() == 2 * 8192);
        for (std::size_t p = 0; p < es.points(); ++p)
        {
            const auto g = element_gain(ElementKind::ideal_dipole, sphere().points[p].direction);
            CHECK(es.values(2 * p, 0) == g.theta);
            CHECK(es.values(2 * p + 1, 0) == g.phi);
        }
    }
    SECTION("broadside sample is in phase")
    {
        const auto es = isolated_fields(ArrayGeometry(2, 0.5, ElementKind::isotropic), single_point(90.0, 0.0));
        CHECK(std::abs(es.values(0, 0) - es.values(0, 1)) < 1e-15);
    }
    SECTION("quarter-wave endfire sample leads by j")
    {
        const auto es = isolated_fields(ArrayGeometry(2, 0.25, ElementKind::isotropic), single_point(0.0, 0.0));
        CHECK(std::abs(es.values(0, 1) - cdouble(0.0, 1.0) * es.values(0, 0)) < 1e-15);
    }
    SECTION("z-directed dipoles radiate no phi component")
    {
        const auto es = isolated_fields(ArrayGeometry(4, 0.2, ElementKind::ideal_dipole, ArrayAxis::y), sphere());
        for (std::size_t p = 0; p < es.points(); ++p)
            CHECK(es.values.row(2 * p + 1).norm() == 0.0);
    }
}

TEST_CASE("isolated field columns are linearly independent")
{
    for (auto kind : {ElementKind::isotropic, ElementKind::ideal_dipole})
        for (auto axis : {ArrayAxis::z, ArrayAxis::y})
            for (int m = 2; m <= 8; ++m)
                for (double d : {0.1, 0.2, 0.3, 0.5})
                {
                    const auto es = isolated_fields(ArrayGeometry(m, d, kind, axis), sphere());
                    CHECK(sigma_ratio(es.values) > 1e-6);
                }

    // Independence survives closer spacing but the margin shrinks quickly with M
    const auto ratio = [](double d)
    { return sigma_ratio(isolated_fields(ArrayGeometry(8, d, ElementKind::isotropic), sphere()).values); };
    CHECK(ratio(0.05) > 0.0);
    CHECK(ratio(0.05) < ratio(0.1));
}

TEST_CASE("coupled fields factor through the ground-truth coupling matrix")
{
    SECTION("uncoupled network gives the identity")
    {
        PortImpedanceMatrix zc;
        zc.self_impedance = {70.0, 40.0};
        zc.values = Eigen::MatrixXcd::Identity(5, 5) * zc.self_impedance;
        const ArrayGeometry geom(5, 0.2, ElementKind::isotropic);
        const auto f = coupled_fields(geom, sphere(), zc, TerminationSpec::conjugate_match(zc));
        CHECK((f.c_true.values - Eigen::MatrixXcd::Identity(5, 5)).norm() < 1e-15);
        CHECK((f.coupled.values - f.isolated.values).norm() == 0.0);
    }
    SECTION("half-wave pair coupling ratio")
    {
        const ArrayGeometry geom(2, 0.5, ElementKind::ideal_dipole, ArrayAxis::y);
        const auto f = coupled_fields(geom, sphere());
        const double ratio = std::abs(f.c_true.values(1, 0) / f.c_true.values(0, 0));
        CHECK(ratio > 0.0);
        CHECK_THAT(ratio, WithinRel(pair_ratio(0.5), 1e-6));
        CHECK_THAT(ratio, WithinAbs(0.2218, 5e-4));
    }
    SECTION("closer spacing couples more strongly")
    {
        const auto far = coupled_fields(ArrayGeometry(2, 0.5, ElementKind::ideal_dipole, ArrayAxis::y), sphere());
        const auto near = coupled_fields(ArrayGeometry(2, 0.1, ElementKind::ideal_dipole, ArrayAxis::y), sphere());
        const double r_far = std::abs(far.c_true.values(1, 0) / far.c_true.values(0, 0));
        const double r_near = std::abs(near.c_true.values(1, 0) / near.c_true.values(0, 0));
        CHECK(r_near > r_far);
        CHECK_THAT(r_near, WithinRel(pair_ratio(0.1), 1e-6));
    }
    SECTION("exact factorization, unit mean diagonal and reversal symmetry")
    {
        for (auto [kind, axis] : {std::pair{ElementKind::isotropic, ArrayAxis::z},
                                  std::pair{ElementKind::ideal_dipole, ArrayAxis::y}})
            for (int m : {2, 3, 4, 7, 8})
                for (double d : {0.05, 0.1, 0.3})
                {
                    const ArrayGeometry geom(m, d, kind, axis);
                    const auto f = coupled_fields(geom, sphere());
                    CHECK((f.coupled.values - f.isolated.values * f.c_true.values).norm() == 0.0);
                    CHECK(std::abs(f.c_true.values.diagonal().mean() - 1.0) < 1e-14);
                    CHECK(column_symmetry_residual(f.c_true.values) < 1e-10);
                    CHECK(std::isfinite(f.c_true.condition));
                }
    }
    SECTION("C is not symmetric in general but the network is")
    {
        const auto f = coupled_fields(ArrayGeometry(4, 0.1, ElementKind::ideal_dipole, ArrayAxis::y), sphere());
        // The surrogate network is reciprocal, so its C happens to be symmetric too
        CHECK((f.c_true.values - f.c_true.values.transpose()).norm() < 1e-12);
    }
    SECTION("errors")
    {
        const ArrayGeometry geom(3, 0.2, ElementKind::isotropic);
        const auto zc = port_impedance(ArrayGeometry(4, 0.2, ElementKind::isotropic));
        CHECK_THROWS_AS(coupled_fields(geom, sphere(), zc, TerminationSpec::conjugate_match(zc)), std::invalid_argument);
        CHECK_THROWS_AS(TerminationSpec::custom({-1.0, 0.0}), std::invalid_argument);

        // A load that cancels the self impedance of an uncoupled network is singular
        PortImpedanceMatrix lossless;
        lossless.self_impedance = {0.0, 50.0};
        lossless.values = Eigen::MatrixXcd::Identity(2, 2) * lossless.self_impedance;
        CHECK_THROWS(port_coupling(lossless, TerminationSpec::conjugate_match(lossless)));
    }
}

TEST_CASE("termination conventions")
{
    const auto zc = port_impedance(ArrayGeometry(3, 0.2, ElementKind::ideal_dipole, ArrayAxis::y));
    CHECK(TerminationSpec::conjugate_match(zc).load == std::conj(zc.self_impedance));
    CHECK(TerminationSpec::self_match(zc).load == zc.self_impedance);
    CHECK(TerminationSpec::custom({50.0, 0.0}).convention == TerminationConvention::custom);
    CHECK(termination_from_string(to_string(TerminationConvention::self_match)) == TerminationConvention::self_match);
    // Different loads give different, still reversal-symmetric, coupling
    const auto a = port_coupling(zc, TerminationSpec::conjugate_match(zc));
    const auto b = port_coupling(zc, TerminationSpec::custom({50.0, 0.0}));
    CHECK((a.values - b.values).norm() > 1e-3);
    CHECK(column_symmetry_residual(b.values) < 1e-12);
}

TEST_CASE("radiated pattern")
{
    SECTION("unit excitation with no coupling is the first column")
    {
        const ArrayGeometry geom(3, 0.2, ElementKind::ideal_dipole, ArrayAxis::y);
        const auto es = isolated_fields(geom, sphere());
        const Eigen::VectorXcd a = Eigen::VectorXcd::Unit(3, 0);
        CHECK((radiated_pattern(a, CouplingMatrix::identity(3), es) - es.values.col(0)).norm() == 0.0);
    }
    SECTION("half-wave endfire pair cancels")
    {
        const ArrayGeometry geom(2, 0.5, ElementKind::isotropic);
        const auto field = radiated_pattern(Eigen::VectorXcd::Ones(2), CouplingMatrix::identity(2), geom, single_point(0.0, 0.0));
        CHECK(std::abs(field(0)) < 1e-15);
    }
    SECTION("with the true coupling it equals E_c a")
    {
        const ArrayGeometry geom(4, 0.1, ElementKind::ideal_dipole, ArrayAxis::y);
        const auto f = coupled_fields(geom, sphere());
        Eigen::VectorXcd a(4);
        a << cdouble(0.3, -1.0), cdouble(2.0, 0.1), cdouble(-0.7, 0.4), cdouble(0.0, 1.5);
        const auto field = radiated_pattern(a, f.c_true, f.isolated);
        CHECK((field - f.coupled.values * a).norm() <= 1e-12 * field.norm());
    }
    SECTION("power pattern and dimension checks")
    {
        Eigen::VectorXcd field(4);
        field << cdouble(3.0, 4.0), cdouble(0.0, 1.0), cdouble(1.0, 0.0), cdouble(0.0, 0.0);
        const auto p = power_pattern(field);
        REQUIRE(p.size() == 2);
        CHECK(p[0] == 26.0);
        CHECK(p[1] == 1.0);
        CHECK_THROWS_AS(power_pattern(Eigen::VectorXcd::Ones(3)), std::invalid_argument);

        const auto es = isolated_fields(ArrayGeometry(3, 0.2, ElementKind::isotropic), single_point(10.0, 0.0));
        CHECK_THROWS_AS(radiated_pattern(Eigen::VectorXcd::Ones(2), CouplingMatrix::identity(2), es), std::invalid_argument);
    }
}
