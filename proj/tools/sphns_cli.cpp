// Command-line front end; talks to the solver exclusively through the
// shared library's C interface.

#include "sphns.h"

#include <CLI11.hpp>

#include <cstdio>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"spherically symmetric compressible Navier-Stokes solver"};
    app.require_subcommand(1);

    // check
    double gamma = 1.0, delta = 0.0, p = 0.0, tol = 1e-6;
    bool find_threshold = false;
    auto* check = app.add_subcommand("check", "admissibility of (gamma, delta)");
    check->add_option("--gamma", gamma, "adiabatic exponent")->default_val(1.0);
    check->add_option("--delta", delta, "viscosity exponent");
    check->add_option("--p", p, "also report gamma - delta - 1/p >= 0");
    check->add_flag("--find-threshold", find_threshold, "locate delta* by bisection");
    check->add_option("--tol", tol, "bisection tolerance")->default_val(1e-6);

    // run
    std::string config, output, summary;
    auto* run = app.add_subcommand("run", "integrate a configured problem");
    run->add_option("config", config, "config file")->required();
    run->add_option("-o,--output", output, "snapshot CSV path")->required();
    run->add_option("--summary", summary, "JSON summary path");

    // mms
    std::string mms_config;
    auto* mms = app.add_subcommand("mms", "manufactured-solution convergence study");
    mms->add_option("config", mms_config, "config file")->required();

    // sweep
    std::string sweep_config, sweep_output;
    auto* sweep = app.add_subcommand("sweep", "admissibility sweep over parameter ranges");
    sweep->add_option("config", sweep_config, "config file")->required();
    sweep->add_option("-o,--output", sweep_output, "region CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    }

    if (check->parsed()) {
        if (!check->count("--delta")) {
            std::fprintf(stderr, "check: --delta is required\n");
            return 1;
        }
        if (find_threshold) {
            double dstar = 0.0;
            if (sphns_find_delta_star(tol, &dstar) != SPHNS_OK) {
                std::fprintf(stderr, "%s\n", sphns_last_error());
                return 1;
            }
            std::printf("delta_star   = %.4f (root %.17g, tol %g)\n", dstar, dstar, tol);
        }
        sphns_admissibility rep;
        const sphns_status st = sphns_check(gamma, delta, &rep);
        std::printf("gamma        = %.10g\n", rep.gamma);
        std::printf("delta        = %.10g\n", rep.delta);
        std::printf("K            = %.10g\n", rep.k);
        std::printf("p_star       = %.10g\n", rep.p_star);
        std::printf("p_min        = %.10g\n", rep.p_min);
        std::printf("p_max        = %.10g\n", rep.p_max);
        std::printf("law_range_ok = %s\n", rep.delta_in_law_range ? "true" : "false");
        std::printf("admissible   = %s\n", rep.admissible ? "true" : "false");
        if (!rep.admissible) std::printf("reason       = %s\n", rep.reason);
        if (p > 0.0) {
            int holds = 0;
            sphns_exponent_condition(gamma, delta, p, &holds);
            std::printf("gamma-delta-1/p >= 0 : %s\n", holds ? "true" : "false");
        }
        return static_cast<int>(st);
    }

    if (run->parsed()) {
        const sphns_status st = sphns_cmd_run(config.c_str(), output.c_str(),
                                              summary.empty() ? nullptr : summary.c_str());
        if (st != SPHNS_OK)
            std::fprintf(stderr, "%s\n", sphns_last_error());
        else
            std::printf("wrote %s\n", output.c_str());
        return static_cast<int>(st);
    }

    if (mms->parsed()) {
        char* table = nullptr;
        const sphns_status st = sphns_cmd_mms(mms_config.c_str(), &table);
        if (table) {
            std::fputs(table, stdout);
            sphns_string_free(table);
        }
        if (st != SPHNS_OK && st != SPHNS_ERR_SLOPE)
            std::fprintf(stderr, "%s\n", sphns_last_error());
        return static_cast<int>(st);
    }

    if (sweep->parsed()) {
        const sphns_status st = sphns_cmd_sweep(sweep_config.c_str(), sweep_output.c_str());
        if (st != SPHNS_OK)
            std::fprintf(stderr, "%s\n", sphns_last_error());
        else
            std::printf("wrote %s\n", sweep_output.c_str());
        return static_cast<int>(st);
    }

    return 1;
}
