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

#ifndef SUPERDIR_IO_HPP
#define SUPERDIR_IO_HPP

#include "superdir/coupling.hpp"
#include "superdir/impedance.hpp"
#include "superdir/measurement.hpp"
#include "superdir/surrogate.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace superdir
{
    // Malformed input file; the message carries file and line
    class parse_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // 17 significant digits, "nan" / "inf" / "-inf" for non-finite values
    std::string format_number(double v);

    // Inverse of format_number; throws std::invalid_argument on trailing garbage
    double parse_number(const std::string &text);

    // One row per grid point: theta_deg,phi_deg,e_theta_re,e_theta_im,e_phi_re,e_phi_im
    void write_field_csv(const std::filesystem::path &path, const FieldMatrix &fields, int column);

    // Writes <stem>_<port>.csv for every column plus <stem>_manifest.json; returns the manifest path
    std::filesystem::path write_field_dump(const std::filesystem::path &dir, const std::string &stem,
                                           const FieldMatrix &fields, const nlohmann::json &geometry);

    // Reads a manifest and every per-port CSV it lists
    FieldMatrix read_field_dump(const std::filesystem::path &manifest);

    // phi_deg,amplitude,phase_deg with a mandatory header
    void write_measurement_csv(const std::filesystem::path &path, const PatternMeasurement &m);
    PatternMeasurement read_measurement_csv(const std::filesystem::path &path, int antenna_index = 1);

    nlohmann::json coupling_to_json(const CouplingEstimate &est);
    CouplingEstimate coupling_from_json(const nlohmann::json &j);

    nlohmann::json impedance_to_json(const ImpedanceMatrix &z);
    ImpedanceMatrix impedance_from_json(const nlohmann::json &j);

    struct SweepRow
    {
        double spacing_wl = 0.0;
        std::string method;
        double directivity = 0.0;
        double gain = 0.0;
        double beamwidth_deg = 0.0;
        double psll_db = 0.0;
        double delta_d = 0.0;
        double delta_f_db = 0.0;
        double condition_z = 0.0;
        double condition_c = 0.0;
    };

    std::string sweep_csv(const std::vector<SweepRow> &rows);
    std::vector<SweepRow> parse_sweep_csv(const std::string &text, const std::string &source = "<sweep>");

    struct PatternSeries
    {
        std::string method;
        std::vector<double> phi_deg;
        std::vector<double> power_db; // peak at 0 dB
    };

    std::string pattern_csv(const PatternSeries &series);
    PatternSeries parse_pattern_csv(const std::string &text, const std::string &method,
                                    const std::string &source = "<pattern>");

    std::string read_text(const std::filesystem::path &path);
    void write_text(const std::filesystem::path &path, const std::string &text);

} // namespace superdir

#endif
