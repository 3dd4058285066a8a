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

#ifndef SUPERDIR_ACCEPTANCE_HPP
#define SUPERDIR_ACCEPTANCE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace superdir
{
    struct AcceptanceOptions
    {
        // Multiplies every numeric tolerance; 0 turns the suite into a self-test that must fail
        double tolerance_scale = 1.0;
        std::uint64_t seed = 1;
        // Scratch space for the file round trips; a fresh temp directory when empty
        std::filesystem::path work_dir;
    };

    struct CriterionResult
    {
        int id = 0;
        std::string title;
        bool passed = false;
        std::string detail; // measured values behind the verdict
    };

    std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &opts = {});

    // "[PASS] 3 title: detail" style report, one line per criterion
    std::string format_report(const std::vector<CriterionResult> &results);

} // namespace superdir

#endif
