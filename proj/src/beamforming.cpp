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

#include "superdir/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace superdir
{
    namespace
    {
        Eigen::MatrixXcd as_complex(const ImpedanceMatrix &z)
        {
            return z.values.cast<cdouble>();
        }

        void check_dims(const Eigen::VectorXcd &a, const Eigen::VectorXcd &e, const ImpedanceMatrix &z)
        {
            if (a.size() != e.size() || z.size() != a.size())
                throw std::invalid_argument("Excitation, steering vector and impedance matrix sizes disagree.");
        }

        // a^T Z a^*, real for symmetric real Z
        double quadratic_form(const Eigen::VectorXcd &a, const Eigen::MatrixXd &z)
        {
            return (a.transpose() * z.cast<cdouble>() * a.conjugate()).value().real();
        }

        std::vector<double> unit_peak(std::vector<double> p)
        {
            const double peak = p.empty() ? 0.0 : *std::max_element(p.begin(), p.end());
            if (!(peak > 0.0))
                throw std::invalid_argument("Pattern has no radiated power to normalize.");
            for (double &v : p)
                v /= peak;
            return p;
        }
    }

    std::string to_string(Method method)
    {
        switch (method)
        {
        case Method::mrt:
            return "mrt";
        case Method::traditional:
            return "traditional";
        case Method::proposed:
            return "proposed";
        case Method::custom:
            return "custom";
        }
        return "custom";
    }

    Method method_from_string(const std::string &name)
    {
        if (name == "mrt")
            return Method::mrt;
        if (name == "traditional")
            return Method::traditional;
        if (name == "proposed")
            return Method::proposed;
        if (name == "custom")
            return Method::custom;
        throw std::invalid_argument("Unknown beamforming method '" + name + "'.");
    }

    ExcitationVector make_excitation(Eigen::VectorXcd values, Method method)
    {
        const double norm = values.norm();
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw std::invalid_argument("Excitation vector must be nonzero and finite.");
        return {values / norm, method, Normalization::unit_norm};
    }

    ExcitationVector with_unit_radiated_power(const ExcitationVector &b, const ImpedanceMatrix &z,
                                              const CouplingMatrix &c)
    {
        const Eigen::VectorXcd effective = c.values * b.values;
        const double p = quadratic_form(effective, z.values);
        if (!(p > 0.0))
            throw std::invalid_argument("Excitation radiates no power; cannot normalize.");
        return {b.values / std::sqrt(p), b.method, Normalization::unit_radiated_power};
    }

    ExcitationVector mrt_vector(const Eigen::VectorXcd &e)
    {
        return make_excitation(e.conjugate(), Method::mrt);
    }

    ExcitationVector traditional_vector(const ImpedanceMatrix &z, const Eigen::VectorXcd &e, const SolveOptions &opts)
    {
        if (z.size() != e.size())
            throw std::invalid_argument("Impedance matrix and steering vector sizes disagree.");
        const Eigen::VectorXcd rhs = e.conjugate();
        return make_excitation(gated_solve(as_complex(z), rhs, opts, "Impedance matrix Z"), Method::traditional);
    }

    ExcitationVector proposed_vector(const CouplingMatrix &c, const ImpedanceMatrix &z, const Eigen::VectorXcd &e,
                                     const SolveOptions &opts)
    {
        if (c.size() != e.size())
            throw std::invalid_argument("Coupling matrix and steering vector sizes disagree.");
        const Eigen::VectorXcd rhs = e.conjugate();
        const Eigen::VectorXcd a = gated_solve(as_complex(z), rhs, opts, "Impedance matrix Z");
        return make_excitation(gated_solve(c.values, a, opts, "Coupling matrix C"), Method::proposed);
    }

    double directivity(const Eigen::VectorXcd &a, const Eigen::VectorXcd &e, const ImpedanceMatrix &z)
    {
        check_dims(a, e, z);
        const double num = std::norm(a.cwiseProduct(e).sum());
        const double den = z.self_term * quadratic_form(a, z.values);
        if (!(den > 0.0))
            throw std::invalid_argument("Radiated power a^T Z a* is not positive; Z is not a valid impedance matrix.");
        return num / den;
    }

    double directivity(const ExcitationVector &a, const Eigen::VectorXcd &e, const ImpedanceMatrix &z)
    {
        return directivity(a.values, e, z);
    }

    double directivity_coupled(const ExcitationVector &b, const CouplingMatrix &c, const Eigen::VectorXcd &e,
                               const ImpedanceMatrix &z)
    {
        if (c.size() != b.size())
            throw std::invalid_argument("Coupling matrix and excitation sizes disagree.");
        return directivity(Eigen::VectorXcd(c.values * b.values), e, z);
    }

    double max_directivity(const ImpedanceMatrix &z, const Eigen::VectorXcd &e, const SolveOptions &opts)
    {
        if (z.size() != e.size())
            throw std::invalid_argument("Impedance matrix and steering vector sizes disagree.");
        const Eigen::VectorXcd x = gated_solve(as_complex(z), e, opts, "Impedance matrix Z");
        return e.dot(x).real() / z.self_term;
    }

    double loss_resistance(double efficiency)
    {
        if (!(efficiency > 0.0 && efficiency <= 1.0))
            throw std::invalid_argument("Radiation efficiency must lie in (0, 1].");
        return (1.0 - efficiency) / efficiency;
    }

    double gain(const ExcitationVector &b, const CouplingMatrix &c, const Eigen::VectorXcd &e,
                const ImpedanceMatrix &z, double r_loss)
    {
        if (!(r_loss >= 0.0))
            throw std::invalid_argument("Loss resistance must be non-negative.");
        if (c.size() != b.size())
            throw std::invalid_argument("Coupling matrix and excitation sizes disagree.");

        const Eigen::VectorXcd cb = c.values * b.values;
        check_dims(cb, e, z);
        const double num = std::norm(cb.cwiseProduct(e).sum());
        const double den = z.self_term * (quadratic_form(cb, z.values) + r_loss * cb.squaredNorm());
        if (!(den > 0.0))
            throw std::invalid_argument("Gain denominator is not positive.");
        return num / den;
    }

    PowerDecomposition power_decomposition(const ImpedanceMatrix &z, const Eigen::VectorXcd &e, double r_loss)
    {
        if (!(r_loss >= 0.0))
            throw std::invalid_argument("Loss resistance must be non-negative.");
        if (z.size() != e.size())
            throw std::invalid_argument("Impedance matrix and steering vector sizes disagree.");
        if ((z.values - z.values.transpose()).cwiseAbs().maxCoeff() > 1e-12 * z.values.cwiseAbs().maxCoeff())
            throw std::invalid_argument("Power decomposition requires a symmetric impedance matrix.");

        // Extended precision: both paths lose about cond(Z) * eps, and close spacing
        // drives cond(Z) past 1e7
        using real_l = long double;
        using cplx_l = std::complex<real_l>;
        using MatL = Eigen::Matrix<real_l, Eigen::Dynamic, Eigen::Dynamic>;
        using VecCL = Eigen::Matrix<cplx_l, Eigen::Dynamic, 1>;

        const MatL zl = z.values.cast<real_l>();
        const VecCL el = e.cast<cplx_l>();

        Eigen::SelfAdjointEigenSolver<MatL> eig(zl);
        const auto &lambda = eig.eigenvalues();
        if (!(lambda.minCoeff() > 0.0L))
            throw numerical_gate_error("Impedance matrix is not positive definite; power split is undefined.");

        PowerDecomposition out;
        out.eigenvalues = lambda.cast<double>();
        const VecCL w = eig.eigenvectors().template cast<cplx_l>().adjoint() * el;
        real_l p_rad = 0.0L, p_loss = 0.0L;
        for (Eigen::Index i = 0; i < w.size(); ++i)
        {
            p_rad += std::norm(w(i)) / lambda(i);
            p_loss += std::norm(w(i)) / (lambda(i) * lambda(i));
        }
        out.p_rad = static_cast<double>(p_rad);
        out.p_loss = r_loss * static_cast<double>(p_loss);

        // Direct quadratic forms at b = Z^-1 e^*
        const VecCL b = zl.template cast<cplx_l>().colPivHouseholderQr().solve(VecCL(el.conjugate()));
        const cplx_l q = (b.transpose() * zl.template cast<cplx_l>() * b.conjugate())(0, 0);
        out.p_rad_direct = static_cast<double>(q.real());
        out.p_loss_direct = r_loss * static_cast<double>(b.squaredNorm());
        return out;
    }

    double delta_d(const ExcitationVector &a, const CouplingMatrix &c, const Eigen::VectorXcd &e,
                   const ImpedanceMatrix &z)
    {
        return directivity(a, e, z) - directivity_coupled(a, c, e, z);
    }

    double pattern_deviation_db(const std::vector<double> &theory, const std::vector<double> &actual)
    {
        if (theory.empty())
            throw std::invalid_argument("Pattern deviation needs at least one sample.");
        if (theory.size() != actual.size())
            throw std::invalid_argument("Patterns have different lengths.");

        double sum = 0.0;
        for (std::size_t i = 0; i < theory.size(); ++i)
            sum += (theory[i] - actual[i]) * (theory[i] - actual[i]);
        const double mean = sum / static_cast<double>(theory.size());
        if (!(mean > 0.0))
            return delta_f_floor_db;
        return std::max(delta_f_floor_db, 10.0 * std::log10(mean));
    }

    double delta_f(const ExcitationVector &a, const CouplingMatrix &c, const FieldMatrix &es)
    {
        const auto theory = unit_peak(power_pattern(radiated_pattern(a.values, CouplingMatrix::identity(a.size()), es)));
        const auto actual = unit_peak(power_pattern(radiated_pattern(a.values, c, es)));
        return pattern_deviation_db(theory, actual);
    }

    PatternMetrics pattern_metrics(const std::vector<double> &power, const std::vector<double> &phi_deg,
                                   double steer_phi_deg)
    {
        const auto n = static_cast<long>(power.size());
        if (n < 3 || phi_deg.size() != power.size())
            throw std::invalid_argument("Pattern metrics need at least three samples with matching azimuths.");
        for (long i = 1; i < n; ++i)
            if (!(phi_deg[static_cast<std::size_t>(i)] > phi_deg[static_cast<std::size_t>(i - 1)]))
                throw std::invalid_argument("Pattern azimuths must be strictly ascending.");
        if (phi_deg.back() - phi_deg.front() >= 360.0)
            throw std::invalid_argument("Pattern azimuths must span less than one full turn.");
        if (!std::isfinite(steer_phi_deg))
            throw std::invalid_argument("Steer azimuth is not finite.");

        auto wrap = [n](long i) { return static_cast<std::size_t>(((i % n) + n) % n); };
        auto at = [&](long i) { return power[wrap(i)]; };
        // Azimuth of an unwrapped index, continuous across the +-180 seam
        auto angle = [&](long i)
        {
            const long turns = (i >= 0 ? i : i - n + 1) / n;
            return phi_deg[wrap(i)] + 360.0 * static_cast<double>(turns);
        };

        // The steer direction must sit inside the sampled circle
        long start = 0;
        double best = 1e300;
        double widest_gap = 360.0 - (phi_deg.back() - phi_deg.front());
        for (long i = 0; i < n; ++i)
        {
            double dist = std::fmod(std::abs(phi_deg[static_cast<std::size_t>(i)] - steer_phi_deg), 360.0);
            dist = std::min(dist, 360.0 - dist);
            if (dist < best)
            {
                best = dist;
                start = i;
            }
            if (i > 0)
                widest_gap = std::max(widest_gap, phi_deg[static_cast<std::size_t>(i)] - phi_deg[static_cast<std::size_t>(i - 1)]);
        }
        if (best > widest_gap)
            throw std::invalid_argument("Steer azimuth lies outside the sampled grid.");

        PatternMetrics out;
        const auto [lo, hi] = std::minmax_element(power.begin(), power.end());
        if (*hi - *lo <= 1e-12 * std::abs(*hi))
        {
            out.peak_phi_deg = phi_deg[static_cast<std::size_t>(start)];
            return out;
        }

        long peak = start;
        for (long steps = 0; steps < n; ++steps)
        {
            if (at(peak + 1) > at(peak))
                ++peak;
            else if (at(peak - 1) > at(peak))
                --peak;
            else
                break;
        }
        const double top = at(peak);
        out.peak_phi_deg = phi_deg[wrap(peak)];

        const double half = 0.5 * top;
        auto crossing = [&](long dir) -> std::optional<double>
        {
            for (long k = 1; k < n; ++k)
            {
                const long inner = peak + dir * (k - 1);
                const long outer = peak + dir * k;
                if (at(outer) < half)
                {
                    const double t = (at(inner) - half) / (at(inner) - at(outer));
                    return angle(inner) + t * (angle(outer) - angle(inner));
                }
            }
            return std::nullopt;
        };
        const auto right = crossing(+1);
        const auto left = crossing(-1);
        if (right && left)
        {
            out.beamwidth_deg = *right - *left;
            out.bounded = true;
        }

        // Main lobe: from the peak down to the first local minimum on each side
        long r = peak, l = peak;
        while (r - peak < n && at(r + 1) <= at(r))
            ++r;
        while (peak - l < n && at(l - 1) <= at(l))
            --l;
        if (r - l >= n - 1)
            return out;

        double side = -1.0;
        for (long k = r + 1; k < l + n; ++k)
            if (at(k) >= at(k - 1) && at(k) >= at(k + 1))
                side = std::max(side, at(k));
        if (side > 0.0)
            out.psll_db = 10.0 * std::log10(side / top);
        else if (side == 0.0)
            out.psll_db = delta_f_floor_db;
        return out;
    }

    double eig_crosscheck(const ImpedanceMatrix &z, const Eigen::VectorXcd &e)
    {
        if (z.size() != e.size())
            throw std::invalid_argument("Impedance matrix and steering vector sizes disagree.");

        const auto qr = as_complex(z).colPivHouseholderQr();
        const Eigen::VectorXcd ze = qr.solve(e);

        // Deterministic start vector with no special relation to e
        Eigen::VectorXcd x(e.size());
        for (Eigen::Index i = 0; i < x.size(); ++i)
            x(i) = cdouble(1.0 + 0.37 * static_cast<double>(i), 0.5 - 0.21 * static_cast<double>(i));

        cdouble lambda = 0.0;
        for (int iter = 0; iter < 100; ++iter)
        {
            const Eigen::VectorXcd y = ze * e.dot(x); // Z^-1 e (e^H x)
            const cdouble next = x.dot(y) / x.squaredNorm();
            const double ynorm = y.norm();
            if (!(ynorm > 0.0))
                break;
            x = y / ynorm;
            const bool done = std::abs(next - lambda) <= 1e-15 * std::abs(next);
            lambda = next;
            if (done)
                break;
        }

        Eigen::LLT<Eigen::MatrixXd> llt(z.values);
        if (llt.info() != Eigen::Success)
            throw numerical_gate_error("Impedance matrix is not positive definite.");
        const Eigen::VectorXcd half = llt.matrixL().solve(e.real()).cast<cdouble>() +
                                      cdouble(0.0, 1.0) * llt.matrixL().solve(e.imag()).cast<cdouble>();
        const double reference = half.squaredNorm();
        return std::abs(lambda - reference) / reference;
    }

} // namespace superdir
