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

#include "superdir/surrogate.hpp"
#include "superdir/linalg.hpp"

#include <stdexcept>

namespace superdir
{
    std::string to_string(TerminationConvention c)
    {
        switch (c)
        {
        case TerminationConvention::conjugate_match:
            return "conjugate_match";
        case TerminationConvention::self_match:
            return "self_match";
        case TerminationConvention::custom:
            return "custom";
        }
        return "custom";
    }

    TerminationConvention termination_from_string(const std::string &name)
    {
        if (name == "conjugate_match")
            return TerminationConvention::conjugate_match;
        if (name == "self_match")
            return TerminationConvention::self_match;
        if (name == "custom")
            return TerminationConvention::custom;
        throw std::invalid_argument("Unknown termination convention '" + name + "'.");
    }

    TerminationSpec TerminationSpec::conjugate_match(const PortImpedanceMatrix &zc)
    {
        return {std::conj(zc.self_impedance), TerminationConvention::conjugate_match};
    }

    TerminationSpec TerminationSpec::self_match(const PortImpedanceMatrix &zc)
    {
        return {zc.self_impedance, TerminationConvention::self_match};
    }

    TerminationSpec TerminationSpec::custom(cdouble load)
    {
        if (!(load.real() >= 0.0))
            throw std::invalid_argument("Termination load must have a non-negative real part.");
        return {load, TerminationConvention::custom};
    }

    FieldMatrix isolated_fields(const ArrayGeometry &geom, const AngularGrid &grid)
    {
        const int m = geom.element_count();
        FieldMatrix es;
        es.grid = grid;
        es.values.resize(2 * static_cast<Eigen::Index>(grid.size()), m);

        for (std::size_t p = 0; p < grid.size(); ++p)
        {
            const Direction &dir = grid.points[p].direction;
            const PolarizedGain g = element_gain(geom.element(), dir);
            const auto row = 2 * static_cast<Eigen::Index>(p);
            for (int n = 0; n < m; ++n)
            {
                const cdouble phase = std::polar(1.0, wavenumber * geom.projected_position(dir, n));
                es.values(row, n) = g.theta * phase;
                es.values(row + 1, n) = g.phi * phase;
            }
        }
        return es;
    }

    CouplingMatrix port_coupling(const PortImpedanceMatrix &zc, const TerminationSpec &term)
    {
        if (!(term.load.real() >= 0.0))
            throw std::invalid_argument("Termination load must have a non-negative real part.");

        const Eigen::Index m = zc.values.rows();
        Eigen::MatrixXcd loaded = zc.values;
        loaded.diagonal().array() += term.load;

        // Column m of the inverse: port currents with 1 V on port m, others loaded
        const Eigen::MatrixXcd currents =
            gated_solve(loaded, Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(m, m)), SolveOptions{}, "Loaded port impedance matrix");

        const cdouble scale = currents.diagonal().mean();
        return make_coupling_matrix(currents / scale);
    }

    CoupledFields coupled_fields(const ArrayGeometry &geom, const AngularGrid &grid,
                                 const PortImpedanceMatrix &zc, const TerminationSpec &term)
    {
        if (zc.size() != geom.element_count())
            throw std::invalid_argument("Port impedance matrix size does not match the element count.");

        CoupledFields out;
        out.isolated = isolated_fields(geom, grid);
        out.c_true = port_coupling(zc, term);
        out.coupled.grid = grid;
        out.coupled.values = out.isolated.values * out.c_true.values;
        return out;
    }

    CoupledFields coupled_fields(const ArrayGeometry &geom, const AngularGrid &grid)
    {
        const PortImpedanceMatrix zc = port_impedance(geom);
        return coupled_fields(geom, grid, zc, TerminationSpec::conjugate_match(zc));
    }

    Eigen::VectorXcd radiated_pattern(const Eigen::VectorXcd &excitation, const CouplingMatrix &c,
                                      const FieldMatrix &es)
    {
        if (excitation.size() != es.values.cols() || c.values.rows() != excitation.size() ||
            c.values.cols() != excitation.size())
            throw std::invalid_argument("Excitation, coupling matrix and field matrix dimensions disagree.");
        return es.values * (c.values * excitation);
    }

    Eigen::VectorXcd radiated_pattern(const Eigen::VectorXcd &excitation, const CouplingMatrix &c,
                                      const ArrayGeometry &geom, const AngularGrid &grid)
    {
        return radiated_pattern(excitation, c, isolated_fields(geom, grid));
    }

    std::vector<double> power_pattern(const Eigen::VectorXcd &field)
    {
        if (field.size() % 2 != 0)
            throw std::invalid_argument("Field vector must interleave theta and phi components.");
        std::vector<double> power(static_cast<std::size_t>(field.size() / 2));
        for (std::size_t p = 0; p < power.size(); ++p)
        {
            const auto row = 2 * static_cast<Eigen::Index>(p);
            power[p] = std::norm(field(row)) + std::norm(field(row + 1));
        }
        return power;
    }

} // namespace superdir
