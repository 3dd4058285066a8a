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

#include "superdir/measurement.hpp"

#include <cmath>
#include <stdexcept>

namespace superdir
{
    AmplitudeKind amplitude_kind_from_string(const std::string &name)
    {
        if (name == "power")
            return AmplitudeKind::power;
        if (name == "field")
            return AmplitudeKind::field;
        throw std::invalid_argument("Unknown amplitude kind '" + name + "' (expected power or field).");
    }

    std::string to_string(AmplitudeKind kind)
    {
        return kind == AmplitudeKind::power ? "power" : "field";
    }

    void validate_measurement(const PatternMeasurement &m)
    {
        const std::string who = "Measurement for antenna " + std::to_string(m.antenna_index);
        if (m.phi_deg.empty())
            throw std::invalid_argument(who + " has no samples.");
        if (m.amplitude.size() != m.phi_deg.size() || m.phase_deg.size() != m.phi_deg.size())
            throw std::invalid_argument(who + " has columns of different length.");

        for (std::size_t i = 0; i < m.size(); ++i)
        {
            if (!std::isfinite(m.amplitude[i]) || !std::isfinite(m.phase_deg[i]) || !std::isfinite(m.phi_deg[i]))
                throw std::invalid_argument(who + " contains a non-finite value.");
            if (m.amplitude[i] < 0.0)
                throw std::invalid_argument(who + " has a negative amplitude sample at phi = " +
                                            std::to_string(m.phi_deg[i]) + " deg.");
            if (m.phi_deg[i] <= -180.0 || m.phi_deg[i] > 180.0)
                throw std::invalid_argument(who + ": phi must lie in (-180, 180].");
            if (i > 0 && !(m.phi_deg[i] > m.phi_deg[i - 1]))
                throw std::invalid_argument(who + ": phi must be strictly ascending.");
        }
    }

    void check_common_grid(std::span<const PatternMeasurement> set)
    {
        if (set.empty())
            throw std::invalid_argument("Measurement set is empty.");
        for (const auto &m : set)
        {
            validate_measurement(m);
            if (m.phi_deg != set.front().phi_deg)
                throw std::invalid_argument("Measurement for antenna " + std::to_string(m.antenna_index) +
                                            " uses a different phi grid than antenna " +
                                            std::to_string(set.front().antenna_index) + ".");
        }
    }

    double power_of(double amplitude, AmplitudeKind kind)
    {
        return kind == AmplitudeKind::power ? amplitude : amplitude * amplitude;
    }

} // namespace superdir
