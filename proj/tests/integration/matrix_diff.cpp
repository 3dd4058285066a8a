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

// Compares two coupling-matrix JSON files: matrix_diff <a.json> <b.json|identity> <tolerance>
// Exit 0 when the Frobenius relative difference is within tolerance.

#include "superdir/io.hpp"

#include <iostream>

int main(int argc, char **argv)
{
    if (argc != 4)
    {
        std::cerr << "usage: matrix_diff <a.json> <b.json|identity> <tolerance>\n";
        return 2;
    }
    try
    {
        using namespace superdir;
        const auto a = coupling_from_json(nlohmann::json::parse(read_text(argv[1]))).c.values;
        const std::string other = argv[2];
        const Eigen::MatrixXcd b = other == "identity"
                                       ? Eigen::MatrixXcd::Identity(a.rows(), a.cols())
                                       : coupling_from_json(nlohmann::json::parse(read_text(other))).c.values;
        if (a.rows() != b.rows() || a.cols() != b.cols())
        {
            std::cerr << "size mismatch\n";
            return 1;
        }
        const double rel = (a - b).norm() / b.norm();
        const double tol = parse_number(argv[3]);
        std::cout << "relative difference " << format_number(rel) << " (tolerance " << argv[3] << ")\n";
        return rel <= tol ? 0 : 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << e.what() << "\n";
        return 2;
    }
}
