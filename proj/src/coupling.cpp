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

#include "superdir/coupling.hpp"
#include "superdir/linalg.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace superdir
{
    namespace
    {
        void check_same_grid(const FieldMatrix &es, const FieldMatrix &ec)
        {
            if (es.values.rows() != ec.values.rows() || es.grid.size() != ec.grid.size() ||
                es.values.rows() != 2 * static_cast<Eigen::Index>(es.grid.size()))
                throw std::invalid_argument("Isolated and coupled fields are not sampled on the same grid.");
            for (std::size_t p = 0; p < es.grid.size(); ++p)
            {
                const auto &a = es.grid.points[p].direction;
                const auto &b = ec.grid.points[p].direction;
                if (std::abs(a.theta - b.theta) > 1e-12 || std::abs(a.phi - b.phi) > 1e-12)
                    throw std::invalid_argument("Isolated and coupled fields are not sampled on the same grid.");
            }
            if (es.values.cols() != ec.values.cols())
                throw std::invalid_argument("Isolated and coupled fields have different port counts.");
        }

        double sigma_ratio(const Eigen::MatrixXcd &a)
        {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
            const auto &s = svd.singularValues();
            return s(0) > 0.0 ? s(s.size() - 1) / s(0) : 0.0;
        }

        [[noreturn]] void rank_error(const std::string &what, double ratio)
        {
            std::ostringstream msg;
            msg << what << " is rank deficient (sigma_min/sigma_max = " << ratio
                << "); the isolated fields must be linearly independent.";
            throw numerical_gate_error(msg.str());
        }

        double relative_residual(const Eigen::MatrixXcd &es, const Eigen::MatrixXcd &c, const Eigen::MatrixXcd &ec)
        {
            const double scale = ec.norm();
            const double r = (es * c - ec).norm();
            return scale > 0.0 ? r / scale : r;
        }
    }

    std::string to_string(LeastSquaresPath path)
    {
        switch (path)
        {
        case LeastSquaresPath::svd:
            return "svd";
        case LeastSquaresPath::householder_qr:
            return "householder_qr";
        case LeastSquaresPath::normal_equations:
            return "normal_equations";
        }
        return "svd";
    }

    CouplingEstimate estimate_c_full(const FieldMatrix &es, const FieldMatrix &ec, LeastSquaresPath path)
    {
        check_same_grid(es, ec);
        const Eigen::MatrixXcd &a = es.values;
        const Eigen::MatrixXcd &b = ec.values;
        if (a.rows() < a.cols())
            throw std::invalid_argument("Fewer field samples than ports; the full-grid solve is underdetermined.");

        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(rank_cutoff);
        const auto &s = svd.singularValues();
        const double ratio = s(0) > 0.0 ? s(s.size() - 1) / s(0) : 0.0;
        if (svd.rank() < a.cols())
            rank_error("Isolated field matrix", ratio);

        Eigen::MatrixXcd c;
        switch (path)
        {
        case LeastSquaresPath::svd:
            c = svd.solve(b);
            break;
        case LeastSquaresPath::householder_qr:
            c = a.householderQr().solve(b);
            break;
        case LeastSquaresPath::normal_equations:
        {
            const Eigen::MatrixXcd gram = a.adjoint() * a;
            c = gram.llt().solve(a.adjoint() * b);
            break;
        }
        }

        CouplingEstimate out;
        out.residual = relative_residual(a, c, b);
        out.es_sigma_ratio = ratio;
        out.c = make_coupling_matrix(std::move(c));
        return out;
    }

    int minimum_reduced_angles(int element_count)
    {
        return element_count % 2 == 0 ? element_count / 2 : element_count;
    }

    std::vector<double> default_reduced_angles(int count)
    {
        if (count < 1)
            throw std::invalid_argument("At least one sample angle is required.");
        std::vector<double> phi(static_cast<std::size_t>(count));
        for (int p = 0; p < count; ++p)
            phi[static_cast<std::size_t>(p)] = 90.0 * (p + 1) / count;
        return phi;
    }

    CouplingEstimate estimate_c_reduced(const FieldMatrix &es, const FieldMatrix &ec)
    {
        check_same_grid(es, ec);
        const Eigen::Index m = es.values.cols();
        const int needed = minimum_reduced_angles(static_cast<int>(m));
        if (static_cast<int>(es.points()) < needed)
            throw std::invalid_argument("Reduced-angle solve for M = " + std::to_string(m) + " needs at least " +
                                        std::to_string(needed) + " sample angles, got " +
                                        std::to_string(es.points()) + ".");

        const Eigen::MatrixXcd &a = es.values;
        const Eigen::MatrixXcd reversed = a.rowwise().reverse();
        const Eigen::Index rows = a.rows();
        Eigen::MatrixXcd c(m, m);

        for (Eigen::Index i = 0; i < (m + 1) / 2; ++i)
        {
            const Eigen::Index mirror = m - 1 - i;
            Eigen::MatrixXcd lhs;
            Eigen::VectorXcd rhs;
            if (i == mirror)
            {
                lhs = a;
                rhs = ec.values.col(i);
            }
            else
            {
                // Column 'mirror' is column i reversed, so both excitations share unknowns
                lhs.resize(2 * rows, m);
                lhs << a, reversed;
                rhs.resize(2 * rows);
                rhs << ec.values.col(i), ec.values.col(mirror);
            }

            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(lhs, Eigen::ComputeThinU | Eigen::ComputeThinV);
            svd.setThreshold(rank_cutoff);
            if (svd.rank() < m)
            {
                const auto &s = svd.singularValues();
                rank_error("Reduced-angle system for column " + std::to_string(i + 1) +
                               " (degenerate angle set)",
                           s(0) > 0.0 ? s(s.size() - 1) / s(0) : 0.0);
            }
            const Eigen::VectorXcd x = svd.solve(rhs);
            c.col(i) = x;
            c.col(mirror) = x.reverse();
        }

        CouplingEstimate out;
        out.residual = relative_residual(a, c, ec.values);
        out.es_sigma_ratio = sigma_ratio(a);
        out.c = make_coupling_matrix(std::move(c));
        return out;
    }

    CouplingEstimate estimate_c_reduced(const ArrayGeometry &geom, const std::vector<double> &phi_deg)
    {
        const CoupledFields sample = coupled_fields(geom, hplane_points(phi_deg));
        return estimate_c_reduced(sample.isolated, sample.coupled);
    }

    FieldMatrix fields_from_measurements(std::span<const PatternMeasurement> records, AmplitudeKind kind)
    {
        check_common_grid(records);
        const auto p = static_cast<Eigen::Index>(records.front().size());

        FieldMatrix f;
        f.grid = hplane_points(records.front().phi_deg);
        f.values = Eigen::MatrixXcd::Zero(2 * p, static_cast<Eigen::Index>(records.size()));
        for (std::size_t n = 0; n < records.size(); ++n)
        {
            const auto &r = records[n];
            for (Eigen::Index i = 0; i < p; ++i)
            {
                const auto k = static_cast<std::size_t>(i);
                const double magnitude = std::sqrt(power_of(r.amplitude[k], kind));
                f.values(2 * i, static_cast<Eigen::Index>(n)) = std::polar(magnitude, deg2rad(r.phase_deg[k]));
            }
        }
        return f;
    }

    PatternMeasurement measurement_from_field(const FieldMatrix &fields, int column, AmplitudeKind kind)
    {
        if (column < 0 || column >= fields.ports())
            throw std::out_of_range("Field column out of range.");
        if (fields.grid.kind != GridKind::h_plane)
            throw std::invalid_argument("Measurements are H-plane cuts; the field grid is not.");

        PatternMeasurement m;
        m.antenna_index = column + 1;
        for (std::size_t p = 0; p < fields.points(); ++p)
        {
            const cdouble e = fields.values(2 * static_cast<Eigen::Index>(p), column);
            m.phi_deg.push_back(rad2deg(fields.grid.points[p].direction.phi));
            m.amplitude.push_back(kind == AmplitudeKind::power ? std::norm(e) : std::abs(e));
            m.phase_deg.push_back(rad2deg(std::arg(e)));
        }
        return m;
    }

} // namespace superdir
