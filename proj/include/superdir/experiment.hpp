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

#ifndef SUPERDIR_EXPERIMENT_HPP
#define SUPERDIR_EXPERIMENT_HPP

#include "superdir/em_core.hpp"
#include "superdir/io.hpp"
#include "superdir/linalg.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace superdir
{
    // Invalid experiment configuration; the message names the offending field
    class config_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    struct SweepSpec
    {
        double d_min = 0.05;
        double d_max = 0.5;
        int steps = 19;

        std::vector<double> spacings() const;
    };

    struct GridSpec
    {
        int n_theta = 64;
        int n_phi = 128;
        // When set, Z and C for beamforming come from an H-plane cut at this step
        std::optional<double> h_plane_step;
    };

    /*!MD
    # ExperimentConfig
    JSON document driving `sweep` and `pattern`:

    ```json
    {"elements": 4, "spacing_wl": 0.3, "element": "ideal_dipole", "axis": "y",
     "steer_theta_deg": 90, "steer_phi_deg": 90,
     "methods": ["mrt", "traditional", "proposed", "theoretical"],
     "sweep": {"d_min": 0.05, "d_max": 0.5, "steps": 19},
     "efficiency": 0.96, "grid": {"n_theta": 64, "n_phi": 128},
     "pattern_step_deg": 1, "seed": 1}
    ```

    Every key is optional except `elements`. Unknown keys are rejected.
    MD!*/
    struct ExperimentConfig
    {
        int elements = 4;
        double spacing_wl = 0.5;
        ElementKind element = ElementKind::isotropic;
        ArrayAxis axis = ArrayAxis::z;
        double steer_theta_deg = 0.0;
        double steer_phi_deg = 0.0;
        std::vector<std::string> methods{"mrt", "traditional", "proposed", "theoretical"};
        std::optional<SweepSpec> sweep;
        double efficiency = 1.0;
        GridSpec grid;
        double pattern_step_deg = 1.0;
        std::uint64_t seed = 1;
        std::optional<double> regularization;

        Direction steer() const { return Direction::from_degrees(steer_theta_deg, steer_phi_deg); }
        SolveOptions solve_options() const { return {regularization, default_condition_limit}; }
    };

    ExperimentConfig parse_config(const nlohmann::json &j);
    ExperimentConfig load_config(const std::string &path);
    nlohmann::json config_to_json(const ExperimentConfig &cfg);

    // One row per (spacing, method) in configuration order
    std::vector<SweepRow> run_sweep(const ExperimentConfig &cfg);

    // H-plane normalized power (dB) per method at cfg.spacing_wl
    std::vector<PatternSeries> run_pattern(const ExperimentConfig &cfg);

} // namespace superdir

#endif
