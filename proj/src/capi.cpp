#include "sphns.h"

#include "commands.hpp"
#include "config.hpp"
#include "diagnostics.hpp"
#include "errors.hpp"
#include "params.hpp"
#include "stepper.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

sphns_status classify(const std::exception& e) {
    set_error(e.what());
    if (dynamic_cast<const sphns::ConfigError*>(&e)) return SPHNS_ERR_CONFIG;
    if (dynamic_cast<const sphns::SolverError*>(&e)) return SPHNS_ERR_SOLVER;
    if (dynamic_cast<const std::invalid_argument*>(&e)) return SPHNS_ERR_CONFIG;
    if (dynamic_cast<const std::domain_error*>(&e)) return SPHNS_ERR_CONFIG;
    return SPHNS_ERR_SOLVER;
}

template <typename F>
sphns_status guarded(F f) {
    try {
        return f();
    } catch (const std::exception& e) {
        return classify(e);
    } catch (...) {
        set_error("unknown failure");
        return SPHNS_ERR_SOLVER;
    }
}

void fill_report(const sphns::AdmissibilityReport& rep, sphns_admissibility* out) {
    out->gamma = rep.gamma;
    out->delta = rep.delta;
    out->k = rep.k;
    out->p_star = rep.p_star;
    out->p_min = rep.p_min;
    out->p_max = rep.p_max;
    out->delta_in_law_range = rep.delta_in_law_range ? 1 : 0;
    out->admissible = rep.admissible ? 1 : 0;
    std::snprintf(out->reason, sizeof(out->reason), "%s", rep.reason.c_str());
}

}  // namespace

struct sphns_sim {
    sphns::PhysParams params;
    sphns::RadialGrid grid;
    sphns::RunConfig cfg;
    sphns::ReformState state;
    double prev_dt = 0.0;
};

extern "C" {

sphns_status sphns_k_of_delta(double delta, double* out) {
    if (!out) { set_error("null output pointer"); return SPHNS_ERR_CONFIG; }
    return guarded([&] {
        *out = sphns::k_of_delta(delta);
        return SPHNS_OK;
    });
}

sphns_status sphns_p_star(double delta, double* out) {
    if (!out) { set_error("null output pointer"); return SPHNS_ERR_CONFIG; }
    return guarded([&] {
        *out = sphns::p_star(delta);
        return SPHNS_OK;
    });
}

sphns_status sphns_p_range(double delta, double* p_min, double* p_max) {
    if (!p_min || !p_max) { set_error("null output pointer"); return SPHNS_ERR_CONFIG; }
    return guarded([&] {
        const auto [lo, hi] = sphns::p_range(delta);
        *p_min = lo;
        *p_max = hi;
        return SPHNS_OK;
    });
}

sphns_status sphns_check(double gamma, double delta, sphns_admissibility* out) {
    if (!out) { set_error("null output pointer"); return SPHNS_ERR_CONFIG; }
    return guarded([&] {
        const auto rep = sphns::check_admissibility(gamma, delta);
        fill_report(rep, out);
        return rep.admissible ? SPHNS_OK : SPHNS_NOT_ADMISSIBLE;
    });
}

sphns_status sphns_find_delta_star(double tol, double* out) {
    if (!out) { set_error("null output pointer"); return SPHNS_ERR_CONFIG; }
    return guarded([&] {
        *out = sphns::find_delta_star(tol);
        return SPHNS_OK;
    });
}

sphns_status sphns_exponent_condition(double gamma, double delta, double p,
                                      int* holds) {
    if (!holds) { set_error("null output pointer"); return SPHNS_ERR_CONFIG; }
    *holds = sphns::exponent_condition(gamma, delta, p) ? 1 : 0;
    return SPHNS_OK;
}

sphns_status sphns_cutoff_weight(double s, double* value, double* derivative) {
    if (!value || !derivative) { set_error("null output pointer"); return SPHNS_ERR_CONFIG; }
    return guarded([&] {
        *value = sphns::cutoff_weight(s);
        *derivative = sphns::cutoff_weight_derivative(s);
        return SPHNS_OK;
    });
}

sphns_status sphns_cmd_run(const char* config_path, const char* csv_path,
                           const char* summary_path) {
    if (!config_path || !csv_path) { set_error("null path"); return SPHNS_ERR_CONFIG; }
    return guarded([&] {
        const auto outcome = sphns::cmd_run(config_path, csv_path,
                                            summary_path ? summary_path : "");
        if (outcome.code != 0) set_error(outcome.message);
        return static_cast<sphns_status>(outcome.code);
    });
}

sphns_status sphns_cmd_mms(const char* config_path, char** table_out) {
    if (!config_path) { set_error("null path"); return SPHNS_ERR_CONFIG; }
    return guarded([&] {
        const auto outcome = sphns::cmd_mms(config_path);
        if (table_out) {
            *table_out = static_cast<char*>(std::malloc(outcome.message.size() + 1));
            if (*table_out)
                std::memcpy(*table_out, outcome.message.c_str(),
                            outcome.message.size() + 1);
        }
        if (outcome.code != 0) set_error(outcome.message);
        return static_cast<sphns_status>(outcome.code);
    });
}

sphns_status sphns_cmd_sweep(const char* config_path, const char* csv_path) {
    if (!config_path || !csv_path) { set_error("null path"); return SPHNS_ERR_CONFIG; }
    return guarded([&] {
        const auto outcome = sphns::cmd_sweep(config_path, csv_path);
        if (outcome.code != 0) set_error(outcome.message);
        return static_cast<sphns_status>(outcome.code);
    });
}

namespace {

sphns_status open_from_config(const sphns::Config& cfg, sphns_sim** out) {
    const auto setup = sphns::build_run_setup(cfg);
    const auto adm = sphns::check_admissibility(setup.params);
    if (!adm.admissible && !setup.run.override_admissibility) {
        set_error("parameters violate the solvability condition (" + adm.reason +
                  "); set override_admissibility = true");
        return SPHNS_ERR_CONFIG;
    }
    auto* sim = new sphns_sim;
    sim->params = setup.params;
    sim->grid = setup.grid;
    sim->cfg = setup.run;
    sim->state = sphns::regularize_initial(setup.grid, setup.params,
                                           setup.init.rho, setup.init.u,
                                           setup.run.eta);
    *out = sim;
    return SPHNS_OK;
}

}  // namespace

sphns_status sphns_sim_open(const char* config_path, sphns_sim** out) {
    if (!config_path || !out) { set_error("null argument"); return SPHNS_ERR_CONFIG; }
    return guarded([&] { return open_from_config(sphns::parse_config_file(config_path), out); });
}

sphns_status sphns_sim_open_text(const char* config_text, sphns_sim** out) {
    if (!config_text || !out) { set_error("null argument"); return SPHNS_ERR_CONFIG; }
    return guarded([&] { return open_from_config(sphns::parse_config_text(config_text), out); });
}

void sphns_sim_close(sphns_sim* sim) { delete sim; }

int sphns_sim_cell_count(const sphns_sim* sim) { return sim ? sim->grid.n : 0; }

double sphns_sim_time(const sphns_sim* sim) { return sim ? sim->state.t : 0.0; }

sphns_status sphns_sim_advance(sphns_sim* sim, double t_target) {
    if (!sim) { set_error("null handle"); return SPHNS_ERR_CONFIG; }
    return guarded([&] {
        while (sim->state.t < t_target) {
            double dt = sphns::stable_dt(sim->state, sim->grid, sim->params,
                                         sim->cfg.cfl, sim->prev_dt);
            dt = std::min(dt, t_target - sim->state.t);
            auto [next, trace] = sphns::picard_step(sim->state, dt, sim->grid,
                                                    sim->params, sim->cfg);
            sim->state = std::move(next);
            sim->prev_dt = dt;
        }
        return SPHNS_OK;
    });
}

sphns_status sphns_sim_diagnostics(const sphns_sim* sim, sphns_diagnostics* out) {
    if (!sim || !out) { set_error("null argument"); return SPHNS_ERR_CONFIG; }
    return guarded([&] {
        const auto rep = sphns::full_report(sim->state, sim->grid, sim->params);
        out->mass = rep.mass;
        out->energy = rep.energy;
        out->bd_energy = rep.bd_energy;
        out->diss_expansion = rep.diss_expansion;
        out->diss_shear = rep.diss_shear;
        out->rho_sup = rep.rho_sup;
        out->r_field_sup = rep.r_field_sup;
        out->wlp_u = rep.wlp_u;
        out->wlp_v = rep.wlp_v;
        out->moment_alpha = rep.moment_alpha;
        out->log_entropy = rep.log_entropy;
        out->ru_l2 = rep.ru_l2;
        out->rv_l2 = rep.rv_l2;
        out->v_sup = rep.v_sup;
        return SPHNS_OK;
    });
}

sphns_status sphns_sim_field(const sphns_sim* sim, sphns_field which,
                             double* buf, size_t len) {
    if (!sim || !buf) { set_error("null argument"); return SPHNS_ERR_CONFIG; }
    if (len != static_cast<size_t>(sim->grid.n)) {
        set_error("buffer length must equal the cell count");
        return SPHNS_ERR_CONFIG;
    }
    const std::vector<double>* src = nullptr;
    switch (which) {
        case SPHNS_FIELD_RHO: src = &sim->state.rho; break;
        case SPHNS_FIELD_H: src = &sim->state.h; break;
        case SPHNS_FIELD_PHI: src = &sim->state.phi; break;
        case SPHNS_FIELD_V: src = &sim->state.v; break;
        case SPHNS_FIELD_U: src = &sim->state.u; break;
        case SPHNS_FIELD_NODES: src = &sim->grid.nodes; break;
    }
    if (!src) { set_error("unknown field id"); return SPHNS_ERR_CONFIG; }
    std::memcpy(buf, src->data(), len * sizeof(double));
    return SPHNS_OK;
}

const char* sphns_last_error(void) { return g_last_error.c_str(); }

void sphns_string_free(char* s) { std::free(s); }

const char* sphns_version(void) { return "0.1.0"; }

}  // extern "C"
