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

#include "superdir/acceptance.hpp"

#include <iostream>

int main()
{
    const auto results = superdir::run_acceptance();
    std::cout << superdir::format_report(results);

    std::size_t passed = 0;
    for (const auto &r : results)
        passed += r.passed ? 1 : 0;
    std::cout << passed << "/" << results.size() << " acceptance criteria passed\n";
    return passed == results.size() && results.size() >= 12 ? 0 : 1;
}
