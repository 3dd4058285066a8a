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

#ifndef SUPERDIR_BEAMFORMING_HPP
#define SUPERDIR_BEAMFORMING_HPP

#include "superdir/coupling_matrix.hpp"
#include "superdir/impedance.hpp"
#include "superdir/linalg.hpp"
#include "superdir/surrogate.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace superdir
{
    // Reported when two patterns are identical, in place of -infinity
    inline constexpr double delta_f_floor_db = -300.0;

    enum class Method
    {
        mrt,
        traditional,
        proposed,
        custom
    };

    enum class Normalization
    {
        unit_norm,
        unit_radiated_power // (Cb)^T Z (Cb)^* = 1
    };

    std::string to_string(Method method);
    Method method_from_string(const std::string &name);

    struct ExcitationVector
    {
        Eigen::VectorXcd values;
        Method method = Method::custom;
        Normalization normalization = Normalization::unit_norm;

        int size() const { return static_cast<int>(values.size()); }
    };

    // Scales to unit Euclidean norm; rejects the zero vector
    ExcitationVector make_excitation(Eigen::VectorXcd values, Method method = Method::custom);

    // Rescales so the effective currents C b radiate unit (normalized) power
    ExcitationVector with_unit_radiated_power(const ExcitationVector &b, const ImpedanceMatrix &z,
                                              const CouplingMatrix &c);

    // a = e^*
    ExcitationVector mrt_vector(const Eigen::VectorXcd &e);

    // a = Z^-1 e^*
    ExcitationVector traditional_vector(const ImpedanceMatrix &z, const Eigen::VectorXcd &e,
                                        const SolveOptions &opts = {});

    // b = C^-1 Z^-1 e^*
    ExcitationVector proposed_vector(const CouplingMatrix &c, const ImpedanceMatrix &z,
                                     const Eigen::VectorXcd &e, const SolveOptions &opts = {});

    // |a^T e|^2 / (self_term * a^T Z a^*)
    double directivity(const Eigen::VectorXcd &a, const Eigen::VectorXcd &e, const ImpedanceMatrix &z);
    double directivity(const ExcitationVector &a, const Eigen::VectorXcd &e, const ImpedanceMatrix &z);

    // Directivity of the effective excitation C b against the uncoupled Z
    double directivity_coupled(const ExcitationVector &b, const CouplingMatrix &c,
                               const Eigen::VectorXcd &e, const ImpedanceMatrix &z);

    // e^H Z^-1 e / self_term
    double max_directivity(const ImpedanceMatrix &z, const Eigen::VectorXcd &e, const SolveOptions &opts = {});

    // (1 - eta) / eta, eta in (0, 1]
    double loss_resistance(double efficiency);

    // Directivity with r_loss * I added to Z in the denominator
    double gain(const ExcitationVector &b, const CouplingMatrix &c, const Eigen::VectorXcd &e,
                const ImpedanceMatrix &z, double r_loss);

    // Radiated and loss terms of the gain denominator at b = Z^-1 e^*, evaluated from
    // the eigendecomposition of Z and, independently, as direct quadratic forms.
    struct PowerDecomposition
    {
        double p_rad = 0.0;
        double p_loss = 0.0;
        double p_rad_direct = 0.0;
        double p_loss_direct = 0.0;
        Eigen::VectorXd eigenvalues;

        double loss_ratio() const { return p_loss / p_rad; }
    };

    PowerDecomposition power_decomposition(const ImpedanceMatrix &z, const Eigen::VectorXcd &e, double r_loss);

    // D(a) - D_c(a)
    double delta_d(const ExcitationVector &a, const CouplingMatrix &c, const Eigen::VectorXcd &e,
                   const ImpedanceMatrix &z);

    // 10 log10(mean |theory - actual|^2) with the -300 dB floor; no renormalization
    double pattern_deviation_db(const std::vector<double> &theory, const std::vector<double> &actual);

    // Pattern deviation between E_s a and E_s C a, each scaled to unit peak
    double delta_f(const ExcitationVector &a, const CouplingMatrix &c, const FieldMatrix &es);

    struct PatternMetrics
    {
        double beamwidth_deg = 360.0;
        bool bounded = false;  // false when the pattern never drops to half power
        double peak_phi_deg = 0.0;
        std::optional<double> psll_db; // empty when no lobe lies outside the main lobe
    };

    // Power samples on a full circle (phi in degrees, ascending). The main lobe is the
    // local maximum reached by climbing from the steer azimuth, bounded by the first
    // local minima on either side.
    PatternMetrics pattern_metrics(const std::vector<double> &power, const std::vector<double> &phi_deg,
                                   double steer_phi_deg);

    // Dominant eigenvalue of Z^-1 e e^H by power iteration, compared with e^H Z^-1 e
    // from a Cholesky solve. Returns the relative gap.
    double eig_crosscheck(const ImpedanceMatrix &z, const Eigen::VectorXcd &e);

} // namespace superdir

#endif
