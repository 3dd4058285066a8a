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

#include "superdir/experiment.hpp"
#include "superdir/beamforming.hpp"
#include "superdir/coupling.hpp"
#include "superdir/impedance.hpp"
#include "superdir/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace superdir
{
    namespace
    {
        using nlohmann::json;

        [[noreturn]] void bad(const std::string &field, const std::string &what)
        {
            throw config_error("config field '" + field + "': " + what);
        }

        void reject_unknown(const json &j, const std::set<std::string> &known, const std::string &prefix)
        {
            for (const auto &item : j.items())
                if (!known.count(item.key()))
                    bad(prefix + item.key(), "unknown key");
        }

        double number(const json &j, const std::string &field)
        {
            if (!j.is_number())
                bad(field, "expected a number");
            const double v = j.get<double>();
            if (!std::isfinite(v))
                bad(field, "must be finite");
            return v;
        }

        int integer(const json &j, const std::string &field)
        {
            if (!j.is_number_integer())
                bad(field, "expected an integer");
            return j.get<int>();
        }

        std::string text(const json &j, const std::string &field)
        {
            if (!j.is_string())
                bad(field, "expected a string");
            return j.get<std::string>();
        }

        template <typename F>
        auto convert(const std::string &field, F &&f)
        {
            try
            {
                return f();
            }
            catch (const config_error &)
            {
                throw;
            }
            catch (const std::invalid_argument &e)
            {
                bad(field, e.what());
            }
        }

        // Everything a sweep cell needs at one spacing
        struct Cell
        {
            ArrayGeometry geom;
            ImpedanceMatrix z_eval;
            ImpedanceMatrix z_bf;
            CouplingMatrix c_true;
            CouplingMatrix c_est;
            FieldMatrix es_plane;
            Eigen::VectorXcd e;
        };

        Cell prepare(const ExperimentConfig &cfg, double spacing)
        {
            const ArrayGeometry geom(cfg.elements, spacing, cfg.element, cfg.axis);
            const AngularGrid sphere = sphere_grid(cfg.grid.n_theta, cfg.grid.n_phi);

            ImpedanceMatrix z_eval = z_full(geom, sphere);
            ImpedanceMatrix z_bf = z_eval;
            AngularGrid estimation = sphere;
            if (cfg.grid.h_plane_step)
            {
                estimation = hplane_grid(*cfg.grid.h_plane_step);
                z_bf = z_hplane(geom, estimation);
                z_bf.self_term = z_eval.self_term;
            }

            const CoupledFields fields = coupled_fields(geom, estimation);
            const CouplingEstimate est = estimate_c_full(fields.isolated, fields.coupled);

            return {geom,
                    std::move(z_eval),
                    std::move(z_bf),
                    fields.c_true,
                    est.c,
                    isolated_fields(geom, hplane_grid(cfg.pattern_step_deg)),
                    steering_vector(geom, cfg.steer())};
        }

        // Excitation and the coupling the array actually applies to it
        std::pair<ExcitationVector, CouplingMatrix> excitation_for(const std::string &method, const Cell &cell,
                                                                   const SolveOptions &opts)
        {
            if (method == "mrt")
                return {mrt_vector(cell.e), cell.c_true};
            if (method == "traditional")
                return {traditional_vector(cell.z_bf, cell.e, opts), cell.c_true};
            if (method == "proposed")
                return {proposed_vector(cell.c_est, cell.z_bf, cell.e, opts), cell.c_true};
            // theoretical: uncoupled array driven by the exact optimum
            return {traditional_vector(cell.z_eval, cell.e, opts), CouplingMatrix::identity(cell.geom.element_count())};
        }

    }

    std::vector<double> SweepSpec::spacings() const
    {
        std::vector<double> d(static_cast<std::size_t>(steps));
        for (int i = 0; i < steps; ++i)
            d[static_cast<std::size_t>(i)] = std::lerp(d_min, d_max, static_cast<double>(i) / (steps - 1)); // exact endpoints
        return d;
    }

    ExperimentConfig parse_config(const json &j)
    {
        if (!j.is_object())
            throw config_error("config: top level must be a JSON object");
        reject_unknown(j,
                       {"elements", "spacing_wl", "element", "axis", "steer_theta_deg", "steer_phi_deg", "methods",
                        "sweep", "efficiency", "grid", "pattern_step_deg", "seed", "regularization"},
                       "");

        ExperimentConfig cfg;
        if (!j.contains("elements"))
            bad("elements", "required");
        cfg.elements = integer(j["elements"], "elements");
        if (cfg.elements < 1)
            bad("elements", "must be at least 1");

        if (j.contains("spacing_wl"))
        {
            cfg.spacing_wl = number(j["spacing_wl"], "spacing_wl");
            if (!(cfg.spacing_wl > 0.0))
                bad("spacing_wl", "must be positive");
        }
        if (j.contains("element"))
            cfg.element = convert("element", [&] { return element_kind_from_string(text(j["element"], "element")); });
        if (j.contains("axis"))
            cfg.axis = convert("axis", [&] { return array_axis_from_string(text(j["axis"], "axis")); });
        if (j.contains("steer_theta_deg"))
            cfg.steer_theta_deg = number(j["steer_theta_deg"], "steer_theta_deg");
        if (j.contains("steer_phi_deg"))
            cfg.steer_phi_deg = number(j["steer_phi_deg"], "steer_phi_deg");
        convert("steer_theta_deg", [&] { return cfg.steer(); });

        if (j.contains("methods"))
        {
            const auto &m = j["methods"];
            if (!m.is_array() || m.empty())
                bad("methods", "expected a non-empty array");
            cfg.methods.clear();
            for (std::size_t i = 0; i < m.size(); ++i)
            {
                const std::string field = "methods[" + std::to_string(i) + "]";
                const std::string name = text(m[i], field);
                if (name != "mrt" && name != "traditional" && name != "proposed" && name != "theoretical")
                    bad(field, "unknown method '" + name + "' (expected mrt, traditional, proposed or theoretical)");
                cfg.methods.push_back(name);
            }
        }

        if (j.contains("sweep"))
        {
            const auto &s = j["sweep"];
            if (!s.is_object())
                bad("sweep", "expected an object");
            reject_unknown(s, {"d_min", "d_max", "steps"}, "sweep.");
            SweepSpec spec;
            if (s.contains("d_min"))
                spec.d_min = number(s["d_min"], "sweep.d_min");
            if (s.contains("d_max"))
                spec.d_max = number(s["d_max"], "sweep.d_max");
            if (s.contains("steps"))
                spec.steps = integer(s["steps"], "sweep.steps");
            if (!(spec.d_min > 0.0))
                bad("sweep.d_min", "must be positive");
            if (!(spec.d_min < spec.d_max))
                bad("sweep.d_max", "must exceed sweep.d_min");
            if (spec.steps < 2)
                bad("sweep.steps", "must be at least 2");
            cfg.sweep = spec;
        }

        if (j.contains("efficiency"))
        {
            cfg.efficiency = number(j["efficiency"], "efficiency");
            if (!(cfg.efficiency > 0.0 && cfg.efficiency <= 1.0))
                bad("efficiency", "must lie in (0, 1]");
        }

        if (j.contains("grid"))
        {
            const auto &g = j["grid"];
            if (!g.is_object())
                bad("grid", "expected an object");
            reject_unknown(g, {"n_theta", "n_phi", "h_plane_step"}, "grid.");
            if (g.contains("n_theta"))
                cfg.grid.n_theta = integer(g["n_theta"], "grid.n_theta");
            if (g.contains("n_phi"))
                cfg.grid.n_phi = integer(g["n_phi"], "grid.n_phi");
            if (cfg.grid.n_theta < 2)
                bad("grid.n_theta", "must be at least 2");
            if (cfg.grid.n_phi < 2)
                bad("grid.n_phi", "must be at least 2");
            if (g.contains("h_plane_step"))
            {
                const double step = number(g["h_plane_step"], "grid.h_plane_step");
                convert("grid.h_plane_step", [&] { return hplane_grid(step); });
                cfg.grid.h_plane_step = step;
            }
        }

        if (j.contains("pattern_step_deg"))
        {
            cfg.pattern_step_deg = number(j["pattern_step_deg"], "pattern_step_deg");
            convert("pattern_step_deg", [&] { return hplane_grid(cfg.pattern_step_deg); });
        }
        if (j.contains("seed"))
        {
            const auto &seed = j["seed"];
            if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0))
                bad("seed", "expected a non-negative integer");
            cfg.seed = j["seed"].get<std::uint64_t>();
        }
        if (j.contains("regularization"))
        {
            const double eps = number(j["regularization"], "regularization");
            if (!(eps >= 0.0))
                bad("regularization", "must be non-negative");
            cfg.regularization = eps;
        }
        return cfg;
    }

    ExperimentConfig load_config(const std::string &path)
    {
        json j;
        try
        {
            j = json::parse(read_text(path));
        }
        catch (const json::parse_error &e)
        {
            throw config_error(path + ": " + e.what());
        }
        try
        {
            return parse_config(j);
        }
        catch (const config_error &e)
        {
            throw config_error(path + ": " + e.what());
        }
    }

    json config_to_json(const ExperimentConfig &cfg)
    {
        json j;
        j["elements"] = cfg.elements;
        j["spacing_wl"] = cfg.spacing_wl;
        j["element"] = to_string(cfg.element);
        j["axis"] = to_string(cfg.axis);
        j["steer_theta_deg"] = cfg.steer_theta_deg;
        j["steer_phi_deg"] = cfg.steer_phi_deg;
        j["methods"] = cfg.methods;
        if (cfg.sweep)
            j["sweep"] = {{"d_min", cfg.sweep->d_min}, {"d_max", cfg.sweep->d_max}, {"steps", cfg.sweep->steps}};
        j["efficiency"] = cfg.efficiency;
        j["grid"] = {{"n_theta", cfg.grid.n_theta}, {"n_phi", cfg.grid.n_phi}};
        if (cfg.grid.h_plane_step)
            j["grid"]["h_plane_step"] = *cfg.grid.h_plane_step;
        j["pattern_step_deg"] = cfg.pattern_step_deg;
        j["seed"] = cfg.seed;
        if (cfg.regularization)
            j["regularization"] = *cfg.regularization;
        return j;
    }

    std::vector<SweepRow> run_sweep(const ExperimentConfig &cfg)
    {
        const std::vector<double> spacings = cfg.sweep ? cfg.sweep->spacings() : std::vector<double>{cfg.spacing_wl};
        const SolveOptions opts = cfg.solve_options();
        const double r_loss = loss_resistance(cfg.efficiency);
        const Direction steer = cfg.steer();
        const double nan = std::numeric_limits<double>::quiet_NaN();

        std::vector<SweepRow> rows;
        for (double d : spacings)
        {
            const Cell cell = prepare(cfg, d);
            const double cond_z = condition_number(cell.z_bf.values);

            for (const auto &method : cfg.methods)
            {
                const auto [a, c] = excitation_for(method, cell, opts);
                const bool theory = method == "theoretical";

                SweepRow row;
                row.spacing_wl = d;
                row.method = method;
                row.directivity = theory ? max_directivity(cell.z_eval, cell.e, opts)
                                         : directivity_coupled(a, c, cell.e, cell.z_eval);
                row.gain = gain(a, c, cell.e, cell.z_eval, r_loss);
                row.delta_d = theory ? 0.0 : delta_d(a, c, cell.e, cell.z_eval);
                row.delta_f_db = theory ? delta_f_floor_db : delta_f(a, c, cell.es_plane);
                row.condition_z = cond_z;
                row.condition_c = cell.c_est.condition;

                row.beamwidth_deg = nan;
                row.psll_db = nan;
                if (in_h_plane(steer))
                {
                    const auto power = power_pattern(radiated_pattern(a.values, c, cell.es_plane));
                    const PatternMetrics pm = pattern_metrics(power, hplane_azimuths(cfg.pattern_step_deg), cfg.steer_phi_deg);
                    row.beamwidth_deg = pm.beamwidth_deg;
                    row.psll_db = pm.psll_db.value_or(nan);
                }
                rows.push_back(row);
            }
        }
        return rows;
    }

    std::vector<PatternSeries> run_pattern(const ExperimentConfig &cfg)
    {
        const Cell cell = prepare(cfg, cfg.spacing_wl);
        const SolveOptions opts = cfg.solve_options();
        const std::vector<double> phi = hplane_azimuths(cfg.pattern_step_deg);

        std::vector<PatternSeries> out;
        for (const auto &method : cfg.methods)
        {
            const auto [a, c] = excitation_for(method, cell, opts);
            const auto power = power_pattern(radiated_pattern(a.values, c, cell.es_plane));
            const double peak = *std::max_element(power.begin(), power.end());

            PatternSeries s;
            s.method = method;
            s.phi_deg = phi;
            for (double p : power)
                s.power_db.push_back(peak > 0.0 ? std::max(delta_f_floor_db, 10.0 * std::log10(p / peak))
                                                : delta_f_floor_db);
            out.push_back(std::move(s));
        }
        return out;
    }

} // namespace superdir
