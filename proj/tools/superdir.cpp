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

// superdir command-line front end

#include "superdir/acceptance.hpp"
#include "superdir/beamforming.hpp"
#include "superdir/coupling.hpp"
#include "superdir/experiment.hpp"
#include "superdir/impedance.hpp"
#include "superdir/io.hpp"
#include "superdir/linalg.hpp"
#include "superdir/surrogate.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace superdir;

namespace
{
    enum ExitCode
    {
        exit_ok = 0,
        exit_validation = 1,
        exit_gate = 2,
        exit_acceptance = 3
    };

    struct GlobalOptions
    {
        std::string config;
        std::string out;
        std::optional<std::uint64_t> seed;
        std::optional<double> regularize;
        std::string amplitude = "power";
    };

    ExperimentConfig effective_config(const GlobalOptions &g)
    {
        ExperimentConfig cfg = g.config.empty() ? ExperimentConfig{} : load_config(g.config);
        if (g.seed)
            cfg.seed = *g.seed;
        if (g.regularize)
        {
            if (!(*g.regularize >= 0.0))
                throw std::invalid_argument("--regularize must be non-negative.");
            cfg.regularization = *g.regularize;
        }
        return cfg;
    }

    // Writes to --out when given, stdout otherwise
    void emit(const GlobalOptions &g, const std::string &text)
    {
        if (g.out.empty())
            std::cout << text;
        else
            write_text(g.out, text);
    }

    fs::path out_dir(const GlobalOptions &g)
    {
        const fs::path dir = g.out.empty() ? fs::path(".") : fs::path(g.out);
        fs::create_directories(dir);
        return dir;
    }

    std::vector<double> parse_angle_list(const std::string &text)
    {
        std::vector<double> angles;
        std::stringstream in(text);
        std::string cell;
        while (std::getline(in, cell, ','))
        {
            try
            {
                angles.push_back(parse_number(cell));
            }
            catch (const std::invalid_argument &)
            {
                throw std::invalid_argument("--angle-list: '" + cell + "' is not a number.");
            }
        }
        if (angles.empty())
            throw std::invalid_argument("--angle-list is empty.");
        return angles;
    }

    // Restricts both field matrices to the samples nearest each requested H-plane azimuth
    std::pair<FieldMatrix, FieldMatrix> select_angles(const FieldMatrix &es, const FieldMatrix &ec,
                                                      const std::vector<double> &phi_deg, nlohmann::json &used)
    {
        std::vector<std::size_t> picks;
        for (double phi : phi_deg)
        {
            const Eigen::Vector3d target = Direction::from_degrees(90.0, phi).unit_vector();
            std::size_t best = 0;
            double best_dist = 1e300;
            for (std::size_t p = 0; p < es.points(); ++p)
            {
                const double dist = (es.grid.points[p].direction.unit_vector() - target).norm();
                if (dist < best_dist)
                {
                    best_dist = dist;
                    best = p;
                }
            }
            if (std::find(picks.begin(), picks.end(), best) != picks.end())
                throw std::invalid_argument("Requested angles map to the same field sample; use a finer dump or other angles.");
            picks.push_back(best);
        }

        FieldMatrix s, c;
        s.grid.kind = c.grid.kind = es.grid.kind;
        s.values.resize(2 * static_cast<Eigen::Index>(picks.size()), es.values.cols());
        c.values.resize(2 * static_cast<Eigen::Index>(picks.size()), ec.values.cols());
        for (std::size_t i = 0; i < picks.size(); ++i)
        {
            const auto src = 2 * static_cast<Eigen::Index>(picks[i]);
            const auto dst = 2 * static_cast<Eigen::Index>(i);
            s.values.middleRows(dst, 2) = es.values.middleRows(src, 2);
            c.values.middleRows(dst, 2) = ec.values.middleRows(src, 2);
            s.grid.points.push_back(es.grid.points[picks[i]]);
            c.grid.points.push_back(ec.grid.points[picks[i]]);
            const auto &d = es.grid.points[picks[i]].direction;
            used.push_back({{"theta_deg", rad2deg(d.theta)}, {"phi_deg", rad2deg(d.phi)}});
        }
        return {s, c};
    }

    struct MeasurementSet
    {
        std::vector<PatternMeasurement> isolated;
        std::vector<PatternMeasurement> coupled;
    };

    // isolated_<i>.csv and coupled_<i>.csv for i = 1, 2, ... until a file is missing
    MeasurementSet read_measurement_dir(const fs::path &dir)
    {
        MeasurementSet set;
        for (int i = 1;; ++i)
        {
            const fs::path iso = dir / ("isolated_" + std::to_string(i) + ".csv");
            const fs::path cpl = dir / ("coupled_" + std::to_string(i) + ".csv");
            if (!fs::exists(iso) && !fs::exists(cpl))
                break;
            if (!fs::exists(iso) || !fs::exists(cpl))
                throw parse_error(dir.string() + ": antenna " + std::to_string(i) + " lacks an isolated or coupled file");
            set.isolated.push_back(read_measurement_csv(iso, i));
            set.coupled.push_back(read_measurement_csv(cpl, i));
        }
        if (set.isolated.empty())
            throw parse_error(dir.string() + ": no isolated_1.csv / coupled_1.csv found");
        return set;
    }

    int cmd_simulate(const GlobalOptions &g)
    {
        const ExperimentConfig cfg = effective_config(g);
        const fs::path dir = out_dir(g);
        const ArrayGeometry geom(cfg.elements, cfg.spacing_wl, cfg.element, cfg.axis);
        const AmplitudeKind kind = amplitude_kind_from_string(g.amplitude);

        nlohmann::json geometry{{"elements", cfg.elements},
                                {"spacing_wl", cfg.spacing_wl},
                                {"element", to_string(cfg.element)},
                                {"axis", to_string(cfg.axis)}};

        const AngularGrid grid = cfg.grid.h_plane_step ? hplane_grid(*cfg.grid.h_plane_step)
                                                       : sphere_grid(cfg.grid.n_theta, cfg.grid.n_phi);
        const CoupledFields f = coupled_fields(geom, grid);
        write_field_dump(dir, "isolated", f.isolated, geometry);
        write_field_dump(dir, "coupled", f.coupled, geometry);
        CouplingEstimate truth;
        truth.c = f.c_true;
        write_text(dir / "c_true.json", coupling_to_json(truth).dump(2) + "\n");

        const CoupledFields plane = coupled_fields(geom, hplane_grid(cfg.pattern_step_deg));
        const fs::path meas = dir / "measurements";
        for (int m = 0; m < geom.element_count(); ++m)
        {
            write_measurement_csv(meas / ("isolated_" + std::to_string(m + 1) + ".csv"),
                                  measurement_from_field(plane.isolated, m, kind));
            write_measurement_csv(meas / ("coupled_" + std::to_string(m + 1) + ".csv"),
                                  measurement_from_field(plane.coupled, m, kind));
        }
        std::cerr << "wrote field dumps, c_true.json and measurements/ to " << dir.string() << "\n";
        return exit_ok;
    }

    int cmd_sweep(const GlobalOptions &g)
    {
        emit(g, sweep_csv(run_sweep(effective_config(g))));
        return exit_ok;
    }

    int cmd_pattern(const GlobalOptions &g)
    {
        const auto series = run_pattern(effective_config(g));
        const fs::path dir = out_dir(g);
        for (const auto &s : series)
            write_text(dir / ("pattern_" + s.method + ".csv"), pattern_csv(s));
        return exit_ok;
    }

    int cmd_estimate_c(const GlobalOptions &g, const std::string &es_path, const std::string &ec_path,
                       const std::string &meas_dir, int angles, const std::string &angle_list)
    {
        FieldMatrix es, ec;
        if (!meas_dir.empty())
        {
            if (!es_path.empty() || !ec_path.empty())
                throw std::invalid_argument("Use either --measurements or --es/--ec, not both.");
            const MeasurementSet set = read_measurement_dir(meas_dir);
            const AmplitudeKind kind = amplitude_kind_from_string(g.amplitude);
            es = fields_from_measurements(set.isolated, kind);
            ec = fields_from_measurements(set.coupled, kind);
        }
        else
        {
            if (es_path.empty() || ec_path.empty())
                throw std::invalid_argument("estimate-c needs --es and --ec manifests, or --measurements.");
            es = read_field_dump(es_path);
            ec = read_field_dump(ec_path);
        }

        nlohmann::json used = nlohmann::json::array();
        CouplingEstimate est;
        if (angles > 0 || !angle_list.empty())
        {
            const auto phi = angle_list.empty() ? default_reduced_angles(angles) : parse_angle_list(angle_list);
            const int needed = minimum_reduced_angles(es.ports());
            if (static_cast<int>(phi.size()) < needed)
                throw std::invalid_argument("Reduced-angle solve for M = " + std::to_string(es.ports()) +
                                            " needs at least " + std::to_string(needed) + " angles, got " +
                                            std::to_string(phi.size()) + ".");
            const auto [s, c] = select_angles(es, ec, phi, used);
            est = estimate_c_reduced(s, c);
        }
        else
            est = estimate_c_full(es, ec);

        nlohmann::json j = coupling_to_json(est);
        if (!used.empty())
            j["angles"] = used;
        emit(g, j.dump(2) + "\n");
        if (est.c.ill_conditioned())
            std::cerr << "warning: estimated C is ill-conditioned (condition " << est.c.condition << ")\n";
        return exit_ok;
    }

    int cmd_ingest(const GlobalOptions &g, const std::string &meas_dir)
    {
        if (meas_dir.empty())
            throw std::invalid_argument("ingest needs --measurements <dir>.");
        const MeasurementSet set = read_measurement_dir(meas_dir);
        const AmplitudeKind kind = amplitude_kind_from_string(g.amplitude);

        const ImpedanceMatrix z = z_from_measurements(set.isolated.front(), set.isolated, kind);
        const CouplingEstimate c =
            estimate_c_full(fields_from_measurements(set.isolated, kind), fields_from_measurements(set.coupled, kind));

        const fs::path dir = out_dir(g);
        write_text(dir / "z.json", impedance_to_json(z).dump(2) + "\n");
        write_text(dir / "c.json", coupling_to_json(c).dump(2) + "\n");
        return exit_ok;
    }

    int cmd_acceptance(const GlobalOptions &g, bool tamper)
    {
        AcceptanceOptions opts;
        opts.tolerance_scale = tamper ? 0.0 : 1.0;
        if (g.seed)
            opts.seed = *g.seed;
        const auto results = run_acceptance(opts);
        const std::string report = format_report(results);
        std::cout << report;
        if (!g.out.empty())
            write_text(g.out, report);

        std::size_t passed = 0;
        for (const auto &r : results)
            passed += r.passed ? 1 : 0;
        std::cout << passed << "/" << results.size() << " criteria passed\n";
        return passed == results.size() ? exit_ok : exit_acceptance;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Superdirective beamforming for compact linear arrays with impedance and field coupling"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--config", g.config, "Experiment configuration JSON");
    app.add_option("--out", g.out, "Output file or directory");
    app.add_option("--seed", g.seed, "Seed for randomized checks");
    app.add_option("--regularize", g.regularize, "Tikhonov parameter added to Z and C before solving");
    app.add_option("--amplitude", g.amplitude, "Measurement amplitude column semantics")
        ->check(CLI::IsMember({"power", "field"}));

    auto *simulate = app.add_subcommand("simulate", "Write surrogate field dumps and H-plane measurement CSVs");
    auto *sweep = app.add_subcommand("sweep", "Directivity, gain and degradation metrics versus spacing");
    auto *pattern = app.add_subcommand("pattern", "Normalized H-plane power pattern per method");

    auto *estimate = app.add_subcommand("estimate-c", "Estimate the field coupling matrix");
    std::string es_path, ec_path, meas_dir, angle_list;
    int angles = 0;
    estimate->add_option("--es", es_path, "Isolated field manifest");
    estimate->add_option("--ec", ec_path, "Coupled field manifest");
    estimate->add_option("--measurements", meas_dir, "Directory of isolated_i.csv / coupled_i.csv");
    estimate->add_option("--angles", angles, "Reduced-angle solve with this many default azimuths")
        ->check(CLI::PositiveNumber);
    estimate->add_option("--angle-list", angle_list, "Reduced-angle solve at these azimuths (deg, comma separated)");

    auto *ingest = app.add_subcommand("ingest", "Measurement CSVs to Z and C JSON");
    ingest->add_option("--measurements", meas_dir, "Directory of isolated_i.csv / coupled_i.csv")->required();

    auto *acceptance = app.add_subcommand("acceptance", "Run the acceptance suite");
    bool tamper = false;
    acceptance->add_flag("--tamper", tamper, "Zero every tolerance; the suite must then fail");

    for (auto *sub : app.get_subcommands({}))
        sub->fallthrough();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_validation;
    }

    try
    {
        if (*simulate)
            return cmd_simulate(g);
        if (*sweep)
            return cmd_sweep(g);
        if (*pattern)
            return cmd_pattern(g);
        if (*estimate)
            return cmd_estimate_c(g, es_path, ec_path, meas_dir, angles, angle_list);
        if (*ingest)
            return cmd_ingest(g, meas_dir);
        if (*acceptance)
            return cmd_acceptance(g, tamper);
    }
    catch (const numerical_gate_error &e)
    {
        std::cerr << "numerical gate: " << e.what() << "\n";
        return exit_gate;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    }
    return exit_validation;
}
