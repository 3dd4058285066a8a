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

#include "superdir/io.hpp"
#include "superdir/linalg.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace superdir
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        std::vector<std::string> split(const std::string &line)
        {
            std::vector<std::string> cells;
            std::string cell;
            std::istringstream in(line);
            while (std::getline(in, cell, ','))
                cells.push_back(trim(cell));
            if (!line.empty() && line.back() == ',')
                cells.emplace_back();
            return cells;
        }

        [[noreturn]] void fail(const std::string &source, std::size_t line, const std::string &what)
        {
            throw parse_error(source + ":" + std::to_string(line) + ": " + what);
        }

        // Splits CSV text into numeric rows after validating the header
        struct CsvTable
        {
            std::vector<std::vector<std::string>> rows;
            std::vector<std::size_t> lines;
        };

        CsvTable read_table(const std::string &text, const std::vector<std::string> &header, const std::string &source)
        {
            std::istringstream in(text);
            std::string line;
            std::size_t number = 0;
            bool have_header = false;
            CsvTable table;
            while (std::getline(in, line))
            {
                ++number;
                if (trim(line).empty())
                    continue;
                auto cells = split(line);
                if (!have_header)
                {
                    if (cells != header)
                    {
                        std::string expected;
                        for (const auto &h : header)
                            expected += (expected.empty() ? "" : ",") + h;
                        fail(source, number, "expected header '" + expected + "'");
                    }
                    have_header = true;
                    continue;
                }
                if (cells.size() != header.size())
                    fail(source, number, "expected " + std::to_string(header.size()) + " columns, found " +
                                             std::to_string(cells.size()));
                table.rows.push_back(std::move(cells));
                table.lines.push_back(number);
            }
            if (!have_header)
                fail(source, number, "missing header row");
            return table;
        }

        double cell_number(const CsvTable &t, std::size_t row, std::size_t col, const std::string &source)
        {
            try
            {
                return parse_number(t.rows[row][col]);
            }
            catch (const std::invalid_argument &)
            {
                fail(source, t.lines[row], "'" + t.rows[row][col] + "' is not a number");
            }
        }

        nlohmann::json matrix_json(const Eigen::MatrixXd &m)
        {
            nlohmann::json out = nlohmann::json::array();
            for (Eigen::Index i = 0; i < m.rows(); ++i)
            {
                nlohmann::json row = nlohmann::json::array();
                for (Eigen::Index j = 0; j < m.cols(); ++j)
                    row.push_back(m(i, j));
                out.push_back(row);
            }
            return out;
        }

        Eigen::MatrixXd matrix_from_json(const nlohmann::json &j, Eigen::Index m, const std::string &what)
        {
            if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != m)
                throw parse_error(what + ": expected " + std::to_string(m) + " rows");
            Eigen::MatrixXd out(m, m);
            for (Eigen::Index i = 0; i < m; ++i)
            {
                const auto &row = j[static_cast<std::size_t>(i)];
                if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m)
                    throw parse_error(what + ": row " + std::to_string(i) + " has the wrong length");
                for (Eigen::Index k = 0; k < m; ++k)
                    out(i, k) = row[static_cast<std::size_t>(k)].get<double>();
            }
            return out;
        }

        std::string grid_kind_name(GridKind k)
        {
            return k == GridKind::full_sphere ? "full_sphere" : "h_plane";
        }
    }

    std::string format_number(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    double parse_number(const std::string &text)
    {
        const std::string t = trim(text);
        if (t.empty())
            throw std::invalid_argument("empty number");
        char *end = nullptr;
        const double v = std::strtod(t.c_str(), &end);
        if (end != t.c_str() + t.size())
            throw std::invalid_argument("not a number: " + t);
        return v;
    }

    std::string read_text(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw parse_error(path.string() + ": cannot open file");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void write_text(const std::filesystem::path &path, const std::string &text)
    {
        if (path.has_parent_path())
            std::filesystem::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error(path.string() + ": cannot open for writing");
        out << text;
        if (!out)
            throw std::runtime_error(path.string() + ": write failed");
    }

    void write_field_csv(const std::filesystem::path &path, const FieldMatrix &fields, int column)
    {
        std::string text = "theta_deg,phi_deg,e_theta_re,e_theta_im,e_phi_re,e_phi_im\n";
        for (std::size_t p = 0; p < fields.points(); ++p)
        {
            const auto &dir = fields.grid.points[p].direction;
            const auto row = 2 * static_cast<Eigen::Index>(p);
            const cdouble et = fields.values(row, column);
            const cdouble ep = fields.values(row + 1, column);
            text += format_number(rad2deg(dir.theta)) + "," + format_number(rad2deg(dir.phi)) + "," +
                    format_number(et.real()) + "," + format_number(et.imag()) + "," +
                    format_number(ep.real()) + "," + format_number(ep.imag()) + "\n";
        }
        write_text(path, text);
    }

    std::filesystem::path write_field_dump(const std::filesystem::path &dir, const std::string &stem,
                                           const FieldMatrix &fields, const nlohmann::json &geometry)
    {
        nlohmann::json manifest;
        manifest["kind"] = stem;
        manifest["geometry"] = geometry;
        manifest["grid"] = {{"kind", grid_kind_name(fields.grid.kind)}, {"points", fields.points()}};
        nlohmann::json weights = nlohmann::json::array();
        for (const auto &pt : fields.grid.points)
            weights.push_back(pt.weight);
        manifest["grid"]["weights"] = weights;
        manifest["ports"] = fields.ports();

        nlohmann::json files = nlohmann::json::array();
        for (int m = 0; m < fields.ports(); ++m)
        {
            const std::string name = stem + "_" + std::to_string(m + 1) + ".csv";
            write_field_csv(dir / name, fields, m);
            files.push_back(name);
        }
        manifest["files"] = files;

        const auto path = dir / (stem + "_manifest.json");
        write_text(path, manifest.dump(2) + "\n");
        return path;
    }

    FieldMatrix read_field_dump(const std::filesystem::path &manifest_path)
    {
        nlohmann::json manifest;
        try
        {
            manifest = nlohmann::json::parse(read_text(manifest_path));
        }
        catch (const nlohmann::json::exception &e)
        {
            throw parse_error(manifest_path.string() + ": " + e.what());
        }

        std::vector<std::string> files;
        std::string grid_kind;
        std::vector<double> weights;
        try
        {
            files = manifest.at("files").get<std::vector<std::string>>();
            grid_kind = manifest.at("grid").at("kind").get<std::string>();
            weights = manifest.at("grid").at("weights").get<std::vector<double>>();
        }
        catch (const nlohmann::json::exception &e)
        {
            throw parse_error(manifest_path.string() + ": " + e.what());
        }
        if (files.empty())
            throw parse_error(manifest_path.string() + ": manifest lists no field files");
        if (grid_kind != "full_sphere" && grid_kind != "h_plane")
            throw parse_error(manifest_path.string() + ": unknown grid kind '" + grid_kind + "'");

        const std::vector<std::string> header{"theta_deg", "phi_deg", "e_theta_re", "e_theta_im", "e_phi_re", "e_phi_im"};
        FieldMatrix out;
        out.grid.kind = grid_kind == "full_sphere" ? GridKind::full_sphere : GridKind::h_plane;

        for (std::size_t m = 0; m < files.size(); ++m)
        {
            const auto path = manifest_path.parent_path() / files[m];
            const std::string source = path.string();
            const CsvTable t = read_table(read_text(path), header, source);
            if (m == 0)
            {
                if (t.rows.size() != weights.size())
                    throw parse_error(source + ": " + std::to_string(t.rows.size()) + " rows but the manifest lists " +
                                      std::to_string(weights.size()) + " grid points");
                out.values.resize(2 * static_cast<Eigen::Index>(t.rows.size()), static_cast<Eigen::Index>(files.size()));
                for (std::size_t r = 0; r < t.rows.size(); ++r)
                {
                    Direction dir;
                    try
                    {
                        dir = Direction::from_degrees(cell_number(t, r, 0, source), cell_number(t, r, 1, source));
                    }
                    catch (const std::invalid_argument &e)
                    {
                        fail(source, t.lines[r], e.what());
                    }
                    out.grid.points.push_back({dir, weights[r]});
                }
            }
            else if (t.rows.size() != out.grid.size())
                throw parse_error(source + ": row count differs from the first field file");

            for (std::size_t r = 0; r < t.rows.size(); ++r)
            {
                if (m > 0)
                {
                    const auto dir = Direction::from_degrees(cell_number(t, r, 0, source), cell_number(t, r, 1, source));
                    const auto &ref = out.grid.points[r].direction;
                    if (std::abs(dir.theta - ref.theta) > 1e-12 || std::abs(dir.phi - ref.phi) > 1e-12)
                        fail(source, t.lines[r], "sample direction differs from the first field file");
                }
                const auto row = 2 * static_cast<Eigen::Index>(r);
                const auto col = static_cast<Eigen::Index>(m);
                out.values(row, col) = {cell_number(t, r, 2, source), cell_number(t, r, 3, source)};
                out.values(row + 1, col) = {cell_number(t, r, 4, source), cell_number(t, r, 5, source)};
            }
        }
        return out;
    }

    void write_measurement_csv(const std::filesystem::path &path, const PatternMeasurement &m)
    {
        validate_measurement(m);
        std::string text = "phi_deg,amplitude,phase_deg\n";
        for (std::size_t i = 0; i < m.size(); ++i)
            text += format_number(m.phi_deg[i]) + "," + format_number(m.amplitude[i]) + "," +
                    format_number(m.phase_deg[i]) + "\n";
        write_text(path, text);
    }

    PatternMeasurement read_measurement_csv(const std::filesystem::path &path, int antenna_index)
    {
        const std::string source = path.string();
        const CsvTable t = read_table(read_text(path), {"phi_deg", "amplitude", "phase_deg"}, source);

        PatternMeasurement m;
        m.antenna_index = antenna_index;
        for (std::size_t r = 0; r < t.rows.size(); ++r)
        {
            const double phi = cell_number(t, r, 0, source);
            const double amp = cell_number(t, r, 1, source);
            const double phase = cell_number(t, r, 2, source);
            if (amp < 0.0)
                fail(source, t.lines[r], "negative amplitude");
            if (phi <= -180.0 || phi > 180.0)
                fail(source, t.lines[r], "phi must lie in (-180, 180]");
            if (!m.phi_deg.empty() && !(phi > m.phi_deg.back()))
                fail(source, t.lines[r], "phi must be strictly ascending");
            m.phi_deg.push_back(phi);
            m.amplitude.push_back(amp);
            m.phase_deg.push_back(phase);
        }
        if (m.phi_deg.empty())
            throw parse_error(source + ": no data rows");
        return m;
    }

    nlohmann::json coupling_to_json(const CouplingEstimate &est)
    {
        const auto &c = est.c.values;
        nlohmann::json j;
        j["m"] = c.rows();
        j["re"] = matrix_json(c.real());
        j["im"] = matrix_json(c.imag());
        j["condition"] = est.c.condition;
        j["residual"] = est.residual;
        return j;
    }

    CouplingEstimate coupling_from_json(const nlohmann::json &j)
    {
        try
        {
            const auto m = j.at("m").get<Eigen::Index>();
            if (m < 1)
                throw parse_error("coupling JSON: m must be positive");
            const Eigen::MatrixXd re = matrix_from_json(j.at("re"), m, "coupling JSON 're'");
            const Eigen::MatrixXd im = matrix_from_json(j.at("im"), m, "coupling JSON 'im'");
            CouplingEstimate est;
            est.c.values = re.cast<cdouble>() + cdouble(0.0, 1.0) * im.cast<cdouble>();
            est.c.condition = j.at("condition").get<double>();
            est.residual = j.at("residual").get<double>();
            return est;
        }
        catch (const nlohmann::json::exception &e)
        {
            throw parse_error(std::string("coupling JSON: ") + e.what());
        }
    }

    nlohmann::json impedance_to_json(const ImpedanceMatrix &z)
    {
        nlohmann::json j;
        j["m"] = z.size();
        j["values"] = matrix_json(z.values);
        j["self_term"] = z.self_term;
        j["condition"] = condition_number(z.values);
        return j;
    }

    ImpedanceMatrix impedance_from_json(const nlohmann::json &j)
    {
        try
        {
            const auto m = j.at("m").get<Eigen::Index>();
            if (m < 1)
                throw parse_error("impedance JSON: m must be positive");
            return {matrix_from_json(j.at("values"), m, "impedance JSON 'values'"), j.at("self_term").get<double>()};
        }
        catch (const nlohmann::json::exception &e)
        {
            throw parse_error(std::string("impedance JSON: ") + e.what());
        }
    }

    std::string sweep_csv(const std::vector<SweepRow> &rows)
    {
        std::string text = "spacing_wl,method,directivity,gain,beamwidth_deg,psll_db,delta_d,delta_f_db,condition_z,condition_c\n";
        for (const auto &r : rows)
            text += format_number(r.spacing_wl) + "," + r.method + "," + format_number(r.directivity) + "," +
                    format_number(r.gain) + "," + format_number(r.beamwidth_deg) + "," + format_number(r.psll_db) + "," +
                    format_number(r.delta_d) + "," + format_number(r.delta_f_db) + "," + format_number(r.condition_z) +
                    "," + format_number(r.condition_c) + "\n";
        return text;
    }

    std::vector<SweepRow> parse_sweep_csv(const std::string &text, const std::string &source)
    {
        const CsvTable t = read_table(text,
                                      {"spacing_wl", "method", "directivity", "gain", "beamwidth_deg", "psll_db",
                                       "delta_d", "delta_f_db", "condition_z", "condition_c"},
                                      source);
        std::vector<SweepRow> rows;
        for (std::size_t r = 0; r < t.rows.size(); ++r)
        {
            SweepRow row;
            row.spacing_wl = cell_number(t, r, 0, source);
            row.method = t.rows[r][1];
            row.directivity = cell_number(t, r, 2, source);
            row.gain = cell_number(t, r, 3, source);
            row.beamwidth_deg = cell_number(t, r, 4, source);
            row.psll_db = cell_number(t, r, 5, source);
            row.delta_d = cell_number(t, r, 6, source);
            row.delta_f_db = cell_number(t, r, 7, source);
            row.condition_z = cell_number(t, r, 8, source);
            row.condition_c = cell_number(t, r, 9, source);
            rows.push_back(row);
        }
        return rows;
    }

    std::string pattern_csv(const PatternSeries &series)
    {
        std::string text = "phi_deg,power_db_normalized\n";
        for (std::size_t i = 0; i < series.phi_deg.size(); ++i)
            text += format_number(series.phi_deg[i]) + "," + format_number(series.power_db[i]) + "\n";
        return text;
    }

    PatternSeries parse_pattern_csv(const std::string &text, const std::string &method, const std::string &source)
    {
        const CsvTable t = read_table(text, {"phi_deg", "power_db_normalized"}, source);
        PatternSeries s;
        s.method = method;
        for (std::size_t r = 0; r < t.rows.size(); ++r)
        {
            s.phi_deg.push_back(cell_number(t, r, 0, source));
            s.power_db.push_back(cell_number(t, r, 1, source));
        }
        return s;
    }

} // namespace superdir
