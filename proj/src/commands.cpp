#include "commands.hpp"

#include "config.hpp"
#include "diagnostics.hpp"
#include "errors.hpp"
#include "stepper.hpp"
#include "verify.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

namespace sphns {

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open output file '" + path + "'");
    f << content;
    if (!f)
        throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace

CommandOutcome cmd_check(double gamma, double delta, double p,
                         bool find_threshold, double tol) {
    CommandOutcome out;
    std::ostringstream os;

    const auto rep = check_admissibility(gamma, delta);
    os << "gamma        = " << format_double(rep.gamma) << "\n"
       << "delta        = " << format_double(rep.delta) << "\n"
       << "K            = " << format_double(rep.k) << "\n"
       << "p_star       = " << format_double(rep.p_star) << "\n"
       << "p_min        = " << format_double(rep.p_min) << "\n"
       << "p_max        = " << format_double(rep.p_max) << "\n"
       << "law_range_ok = " << (rep.delta_in_law_range ? "true" : "false") << "\n"
       << "admissible   = " << (rep.admissible ? "true" : "false") << "\n";
    if (!rep.admissible)
        os << "reason       = " << rep.reason << "\n";
    if (p > 0.0)
        os << "gamma-delta-1/p >= 0 : "
           << (exponent_condition(gamma, delta, p) ? "true" : "false") << "\n";
    if (find_threshold) {
        try {
            const double dstar = find_delta_star(tol);
            char rounded[32];
            std::snprintf(rounded, sizeof(rounded), "%.4f", dstar);
            os << "delta_star   = " << rounded << " (root "
               << format_double(dstar) << ", tol " << format_double(tol) << ")\n";
        } catch (const std::exception& e) {
            out.code = 1;
            out.message = e.what();
            return out;
        }
    }
    out.message = os.str();
    out.code = rep.admissible ? 0 : 2;
    return out;
}

CommandOutcome cmd_run(const std::string& config_path, const std::string& csv_path,
                       const std::string& summary_path) {
    CommandOutcome out;
    RunSetup setup;
    try {
        setup = build_run_setup(parse_config_file(config_path));
        const auto adm = check_admissibility(setup.params);
        if (!adm.admissible && !setup.run.override_admissibility) {
            out.code = 1;
            out.message = "parameters violate the solvability condition (" +
                          adm.reason + "); set override_admissibility = true to run anyway";
            return out;
        }
    } catch (const std::exception& e) {
        out.code = 1;
        out.message = e.what();
        return out;
    }

    nlohmann::ordered_json summary;
    summary["status"] = "ok";
    summary["admissible"] = check_admissibility(setup.params).admissible;
    summary["compatibility_g_l2"] = compatibility_g_l2(setup.grid, setup.params,
                                                       setup.init.rho, setup.init.u);
    summary["config"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : setup.echo.values)
        summary["config"][key] = value;

    const auto t0 = std::chrono::steady_clock::now();
    try {
        const RunResult result = run(setup.init, setup.run, setup.params, setup.grid);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        write_file(csv_path, snapshot_csv(result.snapshots, result.admissible));

        summary["steps"] = result.total_steps;
        summary["wall_time_s"] = wall;
        const auto& fin = result.snapshots.back().report;
        auto& f = summary["final"];
        f["t"] = result.final_state.t;
        f["mass"] = fin.mass;
        f["energy"] = fin.energy;
        f["bd_energy"] = fin.bd_energy;
        f["rho_sup"] = fin.rho_sup;
        f["v_sup"] = fin.v_sup;
        if (!summary_path.empty())
            write_file(summary_path, summary.dump(2) + "\n");
        out.message = "wrote " + csv_path;
        return out;
    } catch (const SolverError& e) {
        summary["status"] = "solver_error";
        summary["error"] = e.what();
        if (e.has_time()) summary["failed_time"] = e.time();
        if (!summary_path.empty())
            write_file(summary_path, summary.dump(2) + "\n");
        out.code = 3;
        out.message = e.what();
        return out;
    } catch (const std::exception& e) {
        summary["status"] = "solver_error";
        summary["error"] = e.what();
        if (!summary_path.empty())
            write_file(summary_path, summary.dump(2) + "\n");
        out.code = 3;
        out.message = e.what();
        return out;
    }
}

namespace {

const std::set<std::string> kMmsKeys = {"mms_preset", "grids", "gamma", "delta",
                                        "a", "r_max", "t_end", "cfl", "theta",
                                        "min_slope"};

}  // namespace

CommandOutcome cmd_mms(const std::string& config_path) {
    CommandOutcome out;
    try {
        const Config cfg = parse_config_file(config_path);
        for (const auto& [key, value] : cfg.values)
            if (!kMmsKeys.count(key))
                throw ConfigError("unknown key '" + key + "'");

        PhysParams params;
        params.gamma = cfg.get_double("gamma", 1.2);
        params.delta = cfg.get_double("delta", 0.8);
        params.a = cfg.get_double("a", 1.0);
        params.validate();

        const double r_max = cfg.get_double("r_max", 4.0);
        const auto ladder = cfg.get_int_list("grids");
        if (ladder.size() < 3)
            throw ConfigError("grids must list at least 3 refinement levels");
        const std::string preset = cfg.get_string("mms_preset");

        MmsStudyResult study;
        double min_slope = 0.0;
        if (preset == "transport") {
            study = mms_transport_study(params, ladder, r_max,
                                        cfg.get_double("t_end", 0.25),
                                        cfg.get_double("cfl", 0.4));
            min_slope = cfg.get_double("min_slope", 0.8);
        } else if (preset == "diffusion") {
            study = mms_diffusion_study(params, cfg.get_double("theta", 0.5), ladder,
                                        r_max, cfg.get_double("t_end", 0.25));
            min_slope = cfg.get_double("min_slope", 1.8);
        } else {
            throw ConfigError("mms_preset must be transport or diffusion, got '" +
                              preset + "'");
        }

        std::ostringstream os;
        os << "preset " << preset << "\n";
        os << "n,error\n";
        for (size_t i = 0; i < study.ns.size(); ++i)
            os << study.ns[i] << "," << format_double17(study.errors[i]) << "\n";
        os << "slope " << format_double(study.slope) << " (minimum "
           << format_double(min_slope) << ")\n";
        out.message = os.str();
        out.code = study.slope >= min_slope ? 0 : 4;
        return out;
    } catch (const ConfigError& e) {
        out.code = 1;
        out.message = e.what();
        return out;
    } catch (const std::invalid_argument& e) {
        out.code = 1;
        out.message = e.what();
        return out;
    } catch (const std::exception& e) {
        out.code = 3;
        out.message = e.what();
        return out;
    }
}

namespace {

const std::set<std::string> kSweepKeys = {"delta_min", "delta_max", "delta_step",
                                          "gamma", "gamma_min", "gamma_max",
                                          "gamma_step"};

std::vector<double> range_values(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo))
        throw ConfigError("malformed range: need max >= min and step > 0");
    std::vector<double> out;
    const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i)
        out.push_back(lo + i * step);
    return out;
}

}  // namespace

CommandOutcome cmd_sweep(const std::string& config_path, const std::string& csv_path) {
    CommandOutcome out;
    try {
        const Config cfg = parse_config_file(config_path);
        for (const auto& [key, value] : cfg.values)
            if (!kSweepKeys.count(key))
                throw ConfigError("unknown key '" + key + "'");

        const auto deltas = range_values(cfg.get_double("delta_min"),
                                         cfg.get_double("delta_max"),
                                         cfg.get_double("delta_step"));
        std::vector<double> gammas;
        if (cfg.has("gamma_min"))
            gammas = range_values(cfg.get_double("gamma_min"),
                                  cfg.get_double("gamma_max"),
                                  cfg.get_double("gamma_step"));
        else
            gammas = {cfg.get_double("gamma", 1.0)};

        struct Row {
            double delta, gamma;
            AdmissibilityReport rep;
        };
        std::vector<Row> rows(deltas.size() * gammas.size());

        // Each point is a pure function of (gamma, delta); fan out, then
        // emit in the already-sorted enumeration order.
        std::vector<std::future<void>> futs;
        const size_t chunk = std::max<size_t>(1, rows.size() / 8);
        for (size_t begin = 0; begin < rows.size(); begin += chunk) {
            const size_t end = std::min(rows.size(), begin + chunk);
            futs.push_back(std::async(std::launch::async, [&, begin, end]() {
                for (size_t idx = begin; idx < end; ++idx) {
                    const double d = deltas[idx / gammas.size()];
                    const double g = gammas[idx % gammas.size()];
                    rows[idx] = Row{d, g, check_admissibility(g, d)};
                }
            }));
        }
        for (auto& f : futs) f.get();

        std::string csv = "delta,gamma,K,p_star,p_max,admissible\n";
        for (const auto& row : rows) {
            csv += format_double(row.delta);
            csv += ',';
            csv += format_double(row.gamma);
            csv += ',';
            csv += format_double(row.rep.k);
            csv += ',';
            csv += format_double(row.rep.p_star);
            csv += ',';
            csv += format_double(row.rep.p_max);
            csv += ',';
            csv += row.rep.admissible ? '1' : '0';
            csv += '\n';
        }
        write_file(csv_path, csv);
        out.message = "wrote " + csv_path;
        return out;
    } catch (const std::invalid_argument& e) {
        out.code = 1;
        out.message = e.what();
        return out;
    } catch (const std::exception& e) {
        out.code = 3;
        out.message = e.what();
        return out;
    }
}

}  // namespace sphns
