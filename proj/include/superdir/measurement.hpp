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

#ifndef SUPERDIR_MEASUREMENT_HPP
#define SUPERDIR_MEASUREMENT_HPP

#include <span>
#include <string>
#include <vector>

namespace superdir
{
    // How the amplitude column of a pattern measurement is to be read
    enum class AmplitudeKind
    {
        power, // power density, |E|^2 up to a constant
        field  // field magnitude |E|
    };

    AmplitudeKind amplitude_kind_from_string(const std::string &name);
    std::string to_string(AmplitudeKind kind);

    // One H-plane cut: amplitude and phase versus azimuth for a single antenna position
    // (isolated) or a single excited port (coupled).
    struct PatternMeasurement
    {
        std::vector<double> phi_deg;
        std::vector<double> amplitude;
        std::vector<double> phase_deg;
        int antenna_index = 1; // one-based, as numbered on the mount

        std::size_t size() const { return phi_deg.size(); }
    };

    // Checks column lengths, non-negative amplitude, and that phi ascends within (-180, 180]
    void validate_measurement(const PatternMeasurement &m);

    // All records must share one phi grid
    void check_common_grid(std::span<const PatternMeasurement> set);

    // |E|^2 regardless of how the amplitude column is stored
    double power_of(double amplitude, AmplitudeKind kind);

} // namespace superdir

#endif
