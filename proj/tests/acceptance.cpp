// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Tolerances are pinned in code next to each check.

#include "commands.hpp"
#include "config.hpp"
#include "diagnostics.hpp"
#include "kernels.hpp"
#include "params.hpp"
#include "stepper.hpp"
#include "transform.hpp"
#include "verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace sphns;

namespace {

int g_failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] %2d %-24s %s\n", pass ? "PASS" : "FAIL", id, name,
                detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

PhysParams run_params() {
    PhysParams p;
    p.gamma = 1.2;
    p.delta = 0.8;
    p.a = 1.0;
    p.eta = 0.05;
    return p;
}

PrimitiveState bump_init(const RadialGrid& g, double amplitude = 0.1,
                         double center = 2.25, double width = 0.8) {
    PrimitiveState init;
    init.rho.resize(g.n);
    init.u.assign(g.n, 0.0);
    for (int i = 0; i < g.n; ++i) {
        const double d = (g.nodes[i] - center) / width;
        init.rho[i] = amplitude * std::exp(-d * d);
    }
    return init;
}

RunConfig bump_run(double t_end) {
    RunConfig cfg;
    cfg.t_end = t_end;
    cfg.cfl = 0.45;
    cfg.eta = 0.05;
    cfg.output_every = 1;
    cfg.picard.max_iters = 8;
    cfg.picard.gamma_tol = 1e-10;
    return cfg;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------- criteria

void criterion_threshold() {
    const auto t0 = std::chrono::steady_clock::now();
    const double dstar = find_delta_star(1e-6);
    const double ps = p_star(0.7427);
    const double pm = p_range(0.7427).second;
    const double ms = seconds_since(t0) * 1e3;

    const bool pass = dstar > 0.7417 && dstar < 0.7437 &&
                      std::fabs(ps - 9.7730) <= 1e-3 &&
                      std::fabs(pm - 9.7770) <= 1e-3 && ms < 1.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "delta*=%.6f in (0.7417,0.7437); p*=%.4f, p_max=%.4f (%.3f ms)",
                  dstar, ps, pm, ms);
    report(1, "threshold-reproduction", pass, buf);
}

void criterion_dissipation_split() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> del(0.0, 1.0), rad(0.1, 10.0),
        val(-10.0, 10.0);
    double worst = 0.0;
    for (int k = 0; k < 1000000; ++k) {
        const double d = del(rng), r = rad(rng), u = val(rng), ur = val(rng);
        const auto [lhs, rhs] = dissipation_split_identity(d, r, u, ur);
        const double scale = std::fabs(2.0 * d * r * ur * r * ur) +
                             std::fabs((8.0 * d - 4.0) * u * u) +
                             std::fabs((8.0 * d - 8.0) * r * u * ur);
        worst = std::max(worst, std::fabs(lhs - rhs) / std::max(scale, 1.0));
    }
    const double s = seconds_since(t0);
    const bool pass = worst <= 1e-12 && s < 1.0;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "max relative gap %.3e over 1e6 tuples (%.2f s)",
                  worst, s);
    report(2, "dissipation-split", pass, buf);
}

void criterion_cutoff() {
    const double e1 = std::exp(-1.0);
    const double below_half = std::nextafter(0.5, 0.0);
    const double above_half = std::nextafter(0.5, 1.0);
    const double below_one = std::nextafter(1.0, 0.0);

    const double j1 = std::fabs(cutoff_weight(below_half) - cutoff_weight(above_half));
    const double j2 = std::fabs(cutoff_weight_derivative(below_half) -
                                cutoff_weight_derivative(above_half));
    const double j3 = std::fabs(cutoff_weight(below_one) - e1);
    const double j4 = std::fabs(cutoff_weight_derivative(below_one) + e1);

    double c = 0.0;
    bool positive = true;
    for (int k = 0; k <= 10000; ++k) {
        const double s = 1e-3 * k * (10.0 / 10.0);
        const double z = cutoff_weight(s);
        positive = positive && (z > 0.0);
        c = std::max(c, std::fabs(cutoff_weight_derivative(s)) / z);
    }
    const bool pass = j1 <= 1e-12 && j2 <= 1e-12 && j3 <= 1e-12 && j4 <= 1e-12 &&
                      positive && std::isfinite(c);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "knot gaps %.1e/%.1e/%.1e/%.1e; |zeta'|<=C zeta with C=%.3f",
                  j1, j2, j3, j4, c);
    report(3, "cutoff-weight-c1", pass, buf);
}

// shared by criteria 4 and 5
struct BalanceProbe {
    double mass_dev = 0.0;
    double residual = 0.0;
    double bd_ratio = 0.0;
    double e0 = 0.0;
    double wall = 0.0;
};

BalanceProbe balance_probe(int n) {
    const auto params = run_params();
    const auto g = make_grid(1.0, 6.0, n, 1.0);
    const auto init = bump_init(g);
    const auto cfg = bump_run(1.0);

    const auto t0 = std::chrono::steady_clock::now();
    const auto result = run(init, cfg, params, g);
    BalanceProbe probe;
    probe.wall = seconds_since(t0);

    const auto& sn = result.snapshots;
    const double m0 = sn.front().report.mass;
    probe.e0 = sn.front().report.energy;
    const double bd0 = sn.front().report.bd_energy;

    double diss = 0.0, bd_max = 0.0;
    for (size_t k = 0; k < sn.size(); ++k) {
        probe.mass_dev = std::max(probe.mass_dev,
                                  std::fabs(sn[k].report.mass - m0) / m0);
        bd_max = std::max(bd_max, sn[k].report.bd_energy);
        if (k > 0) {
            const double dt = sn[k].t - sn[k - 1].t;
            diss += 0.5 * dt *
                    (sn[k - 1].report.diss_expansion + sn[k - 1].report.diss_shear +
                     sn[k].report.diss_expansion + sn[k].report.diss_shear);
        }
    }
    probe.residual = std::fabs(sn.back().report.energy + diss - probe.e0);
    probe.bd_ratio = bd_max / bd0;
    return probe;
}

void criterion_mass_and_energy() {
    const auto p128 = balance_probe(128);
    const auto p256 = balance_probe(256);
    const auto p512 = balance_probe(512);

    {
        const bool pass = p512.mass_dev <= 1e-12 && p512.wall < 30.0;
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "n=512 t_end=1: max |M(t)-M(0)|/M(0) = %.3e (%.2f s)",
                      p512.mass_dev, p512.wall);
        report(4, "mass-conservation", pass, buf);
    }
    {
        const bool pass = p512.residual <= 1e-4 * p512.e0 &&
                          p512.residual < p256.residual &&
                          p256.residual < p128.residual &&
                          p512.bd_ratio <= 1.001;
        char buf[200];
        std::snprintf(buf, sizeof(buf),
                      "residual %.3e <= %.3e; refinement %.2e > %.2e > %.2e; "
                      "bd ratio %.6f",
                      p512.residual, 1e-4 * p512.e0, p128.residual, p256.residual,
                      p512.residual, p512.bd_ratio);
        report(5, "energy-balance", pass, buf);
    }
}

void criterion_transform_roundtrip() {
    const auto g = make_grid(1.0, 4.0, 64, 1.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> logrho(-6.0, 2.0), vel(-1.0, 1.0),
        del(0.67, 0.99);

    double worst_rt = 0.0, worst_forms = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        PhysParams params = run_params();
        params.delta = del(rng);
        PrimitiveState s;
        s.rho.resize(g.n);
        s.u.resize(g.n);
        for (int i = 0; i < g.n; ++i) {
            s.rho[i] = std::exp(logrho(rng));
            s.u[i] = vel(rng);
        }
        const auto reform = to_reformulated(s, params, g);
        const auto back = to_primitive(reform, params);
        for (int i = 0; i < g.n; ++i)
            worst_rt = std::max(worst_rt,
                                std::fabs(back.rho[i] - s.rho[i]) / s.rho[i]);
        worst_forms = std::max(worst_forms, momentum_forms_agree(reform, g, params));
    }
    const bool pass = worst_rt <= 1e-12 && worst_forms <= 1e-12;
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "round trip %.3e, source groupings %.3e over 1000 states",
                  worst_rt, worst_forms);
    report(6, "transform-roundtrip", pass, buf);
}

void criterion_pressure_identity() {
    const auto params = run_params();
    std::vector<double> errs, hs;
    for (int n : {64, 128, 256, 512}) {
        const auto g = make_grid(1.0, 3.0, n, 1.0);
        PrimitiveState s;
        s.rho.resize(g.n);
        s.u.assign(g.n, 0.0);
        for (int i = 0; i < g.n; ++i) s.rho[i] = std::exp(-g.nodes[i]);
        errs.push_back(pressure_gradient_identity_residual(
            to_reformulated(s, params, g), params, g));
        hs.push_back(g.min_dr());
    }
    const double slope = convergence_order(errs, hs);
    const bool pass = std::fabs(slope - 2.0) <= 0.25;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "residual order %.3f over three doublings", slope);
    report(7, "pressure-identity", pass, buf);
}

void criterion_transport_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    const double a = 1.0, r_max = 3.0, t_end = 0.25;
    const double L = r_max - a;
    const ScalarField u{
        [=](double r, double) { return 0.5 * std::sin(std::numbers::pi * (r - a) / L); },
        [=](double r, double) {
            return 0.5 * (std::numbers::pi / L) * std::cos(std::numbers::pi * (r - a) / L);
        },
        {}, {}};
    auto rho0 = [](double r) {
        return 1.0 + 0.5 * std::exp(-2.0 * (r - 1.8) * (r - 1.8));
    };

    std::vector<double> errs, hs;
    for (int n : {128, 256, 512, 1024}) {
        const auto g = make_grid(a, r_max, n, 1.0);
        std::vector<double> rho(g.n), uf(g.n + 1);
        for (int i = 0; i < g.n; ++i) rho[i] = rho0(g.nodes[i]);
        for (int j = 0; j <= g.n; ++j) uf[j] = u.value(g.faces[j], 0.0);
        const double dt = 0.4 * g.min_dr() / 0.5;
        double t = 0.0;
        while (t < t_end) {
            const double step = std::min(dt, t_end - t);
            rho = step_continuity(g, rho, uf, step);
            t += step;
        }
        const auto oracle = characteristics_oracle(rho0, u, t_end, g.nodes, a, r_max);
        double err = 0.0;
        for (int i = 0; i < g.n; ++i)
            err += (rho[i] - oracle[i]) * (rho[i] - oracle[i]) * g.dr[i];
        errs.push_back(std::sqrt(err));
        hs.push_back(g.min_dr());
    }
    const double slope = convergence_order(errs, hs);
    const double s = seconds_since(t0);
    const bool pass = std::fabs(slope - 1.0) <= 0.2 && s < 60.0;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "L2 error slope %.3f over n=128..1024 (%.1f s)",
                  slope, s);
    report(8, "transport-oracle", pass, buf);
}

void criterion_picard_contraction() {
    const auto params = run_params();
    const auto g = make_grid(1.0, 6.0, 512, 1.0);
    const auto init = bump_init(g);
    const auto state = regularize_initial(g, params, init.rho, init.u, 0.05);

    auto cfg = bump_run(1.0);
    cfg.picard.max_iters = 5;
    cfg.picard.gamma_tol = 1e-30;  // record the full trace

    const double dt0 = 0.5 * stable_dt(state, g, params, 0.9);
    bool ratios_ok = true, monotone = true;
    double prev_first = std::numeric_limits<double>::infinity();
    std::string detail;
    for (double dt : {dt0, dt0 / 2.0, dt0 / 4.0}) {
        const auto [next, trace] = picard_step(state, dt, g, params, cfg);
        for (double r : trace.ratios) ratios_ok = ratios_ok && r <= 0.9;
        if (trace.ratios.empty() || trace.ratios.front() >= prev_first)
            monotone = false;
        if (!trace.ratios.empty()) prev_first = trace.ratios.front();
        char frag[48];
        std::snprintf(frag, sizeof(frag), "%.2e ",
                      trace.ratios.empty() ? -1.0 : trace.ratios.front());
        detail += frag;
    }
    report(9, "picard-contraction", ratios_ok && monotone,
           "all ratios <= 0.9; first ratios at dt, dt/2, dt/4: " + detail);
}

void criterion_eta_continuation() {
    const auto params = run_params();
    const auto g = make_grid(1.0, 5.0, 96, 1.0);
    PrimitiveState init;
    init.rho.resize(g.n);
    init.u.assign(g.n, 0.0);
    for (int i = 0; i < g.n; ++i) {
        const double d = (g.nodes[i] - 2.0) / 0.5;
        init.rho[i] = 0.5 + 0.3 * std::exp(-d * d);  // strictly positive
    }
    auto cfg = bump_run(0.25);
    cfg.output_every = 1 << 30;

    const std::vector<double> etas{0.1, 0.05, 0.025, 0.0125};
    const auto result = eta_continuation(init, etas, cfg, params, g);
    bool pass = result.entries.size() == 4;
    for (const auto& entry : result.entries)
        pass = pass && entry.error.empty();
    std::string detail = "d_j: ";
    for (size_t j = 0; j < result.distances.size(); ++j) {
        if (j + 1 < result.distances.size())
            pass = pass && result.distances[j] > result.distances[j + 1];
        char frag[32];
        std::snprintf(frag, sizeof(frag), "%.3e ", result.distances[j]);
        detail += frag;
    }
    pass = pass && result.distances.size() == 3 && result.distances.back() > 0.0;
    report(10, "eta-continuation", pass, detail + "strictly decreasing");
}

void criterion_mms() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto params = run_params();
    const std::vector<int> t_ladder{64, 128, 256};
    const auto transport = mms_transport_study(params, t_ladder, 4.0, 0.25, 0.4);
    const std::vector<int> d_ladder{32, 64, 128};
    const auto diffusion = mms_diffusion_study(params, 0.5, d_ladder, 4.0, 0.25);
    const double s = seconds_since(t0);
    const bool pass = transport.slope >= 0.8 && diffusion.slope >= 1.8 && s < 120.0;
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "transport slope %.3f (>= 0.8), diffusion slope %.3f (>= 1.8) (%.1f s)",
                  transport.slope, diffusion.slope, s);
    report(11, "mms-convergence", pass, buf);
}

void criterion_determinism() {
    {
        std::ofstream f("acceptance_run.txt", std::ios::binary);
        f << "gamma = 1.2\ndelta = 0.8\na = 1.0\nr_max = 6.0\nn = 128\n"
             "eta = 0.05\nt_end = 0.1\ncfl = 0.45\ninit = gaussian-bump\n";
    }
    const auto r1 = cmd_run("acceptance_run.txt", "acc1.csv", "");
    const auto r2 = cmd_run("acceptance_run.txt", "acc2.csv", "");

    {
        std::ofstream f("acceptance_sweep.txt", std::ios::binary);
        f << "delta_min = 0.70\ndelta_max = 0.80\ndelta_step = 0.005\n";
    }
    const auto s1 = cmd_sweep("acceptance_sweep.txt", "accs1.csv");
    const auto s2 = cmd_sweep("acceptance_sweep.txt", "accs2.csv");

    const bool run_same = slurp("acc1.csv") == slurp("acc2.csv");
    const bool sweep_same = slurp("accs1.csv") == slurp("accs2.csv");
    const bool pass = r1.code == 0 && r2.code == 0 && s1.code == 0 &&
                      s2.code == 0 && run_same && sweep_same &&
                      !slurp("acc1.csv").empty() && !slurp("accs1.csv").empty();
    char buf[128];
    std::snprintf(buf, sizeof(buf), "run CSV byte-identical: %s; sweep: %s",
                  run_same ? "yes" : "no", sweep_same ? "yes" : "no");
    report(12, "determinism", pass, buf);
}

}  // namespace

int main() {
    criterion_threshold();
    criterion_dissipation_split();
    criterion_cutoff();
    criterion_mass_and_energy();
    criterion_transform_roundtrip();
    criterion_pressure_identity();
    criterion_transport_oracle();
    criterion_picard_contraction();
    criterion_eta_continuation();
    criterion_mms();
    criterion_determinism();

    std::printf("acceptance: %d/12 criteria passed\n", 12 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
