#include "config.hpp"

#include "errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace sphns {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string Config::get_string(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end())
        throw ConfigError("missing required key '" + key + "'");
    return it->second;
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
    const std::string s = get_string(key);
    double out = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("key '" + key + "': cannot parse '" + s + "' as a number");
    return out;
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
    const std::string s = get_string(key);
    int out = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("key '" + key + "': cannot parse '" + s + "' as an integer");
    return out;
}

int Config::get_int(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string s = get_string(key);
    if (s == "true") return true;
    if (s == "false") return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" + s + "'");
}

std::vector<int> Config::get_int_list(const std::string& key) const {
    const std::string s = get_string(key);
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        int v = 0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (res.ec != std::errc() || res.ptr != item.data() + item.size())
            throw ConfigError("key '" + key + "': bad list entry '" + item + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw ConfigError("key '" + key + "': empty list");
    return out;
}

Config parse_config_text(const std::string& text) {
    Config cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (cfg.values.count(key))
            throw ConfigError("duplicate key '" + key + "'");
        cfg.values[key] = value;
    }
    return cfg;
}

Config parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_config_text(buf.str());
}

namespace {

const std::set<std::string> kRunKeys = {
    "gamma", "delta", "a", "r_max", "n", "stretch", "eta", "alpha",
    "t_end", "cfl", "theta", "max_iters", "gamma_tol", "output_every",
    "outer_bc", "limiter", "init", "override_admissibility",
    "bump_amplitude", "bump_center", "bump_width", "steady_rho",
    "rho_file", "u_file"};

// Two-column "r value" rows, linearly interpolated onto the grid nodes.
std::vector<double> load_profile(const std::string& path, const RadialGrid& grid) {
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot open profile file '" + path + "'");
    std::vector<double> rs, vals;
    double r, v;
    while (f >> r >> v) {
        if (!rs.empty() && r <= rs.back())
            throw ConfigError("profile file '" + path + "': radii must increase");
        rs.push_back(r);
        vals.push_back(v);
    }
    if (rs.size() < 2)
        throw ConfigError("profile file '" + path + "': need at least two rows");

    std::vector<double> out(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.nodes[i];
        if (x <= rs.front()) {
            out[i] = vals.front();
        } else if (x >= rs.back()) {
            out[i] = vals.back();
        } else {
            auto hi = std::lower_bound(rs.begin(), rs.end(), x);
            const size_t j = hi - rs.begin();
            const double w = (x - rs[j - 1]) / (rs[j] - rs[j - 1]);
            out[i] = (1.0 - w) * vals[j - 1] + w * vals[j];
        }
    }
    return out;
}

}  // namespace

RunSetup build_run_setup(const Config& cfg) {
    for (const auto& [key, value] : cfg.values)
        if (!kRunKeys.count(key))
            throw ConfigError("unknown key '" + key + "'");

    RunSetup setup;
    setup.params.gamma = cfg.get_double("gamma");
    setup.params.delta = cfg.get_double("delta");
    setup.params.a = cfg.get_double("a");
    setup.params.eta = cfg.get_double("eta");
    setup.params.alpha = cfg.get_double("alpha", 0.0);
    try {
        setup.params.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    const double r_max = cfg.get_double("r_max");
    const int n = cfg.get_int("n");
    const double stretch = cfg.get_double("stretch", 1.0);
    try {
        setup.grid = make_grid(setup.params.a, r_max, n, stretch);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    setup.run.t_end = cfg.get_double("t_end");
    setup.run.cfl = cfg.get_double("cfl");
    setup.run.eta = setup.params.eta;
    setup.run.theta = cfg.get_double("theta", 0.5);
    setup.run.picard.max_iters = cfg.get_int("max_iters", 8);
    setup.run.picard.gamma_tol = cfg.get_double("gamma_tol", 1e-8);
    setup.run.output_every = cfg.get_int("output_every", 1);
    setup.run.override_admissibility = cfg.get_bool("override_admissibility", false);

    const std::string bc = cfg.get_string("outer_bc", "dirichlet");
    if (bc == "dirichlet")
        setup.run.outer_bc = OuterBc::dirichlet_zero;
    else if (bc == "neumann")
        setup.run.outer_bc = OuterBc::zero_gradient;
    else
        throw ConfigError("outer_bc must be dirichlet or neumann, got '" + bc + "'");

    const std::string lim = cfg.get_string("limiter", "none");
    if (lim == "none")
        setup.run.limiter = Limiter::none;
    else if (lim == "minmod")
        setup.run.limiter = Limiter::minmod;
    else
        throw ConfigError("limiter must be none or minmod, got '" + lim + "'");

    if (!(setup.run.t_end > 0.0))
        throw ConfigError("t_end must be positive");
    if (!(setup.run.cfl > 0.0 && setup.run.cfl <= 0.9))
        throw ConfigError("cfl must lie in (0, 0.9]");
    if (setup.run.picard.max_iters < 1)
        throw ConfigError("max_iters must be >= 1");
    if (!(setup.run.picard.gamma_tol > 0.0))
        throw ConfigError("gamma_tol must be positive");
    if (setup.run.output_every < 1)
        throw ConfigError("output_every must be >= 1");

    // Initial data presets carry the unshifted density; the eta shift is the
    // stepper's job.
    const std::string init = cfg.get_string("init");
    setup.init.t = 0.0;
    setup.init.u.assign(setup.grid.n, 0.0);
    setup.init.rho.resize(setup.grid.n);
    if (init == "steady") {
        const double c = cfg.get_double("steady_rho", 1.0);
        if (!(c > 0.0)) throw ConfigError("steady_rho must be positive");
        std::fill(setup.init.rho.begin(), setup.init.rho.end(), c);
    } else if (init == "gaussian-bump") {
        const double A = cfg.get_double("bump_amplitude", 0.1);
        const double r0 = cfg.get_double("bump_center",
                                         setup.params.a + 0.25 * (r_max - setup.params.a));
        const double w = cfg.get_double("bump_width", 0.8);
        if (!(A > 0.0) || !(w > 0.0))
            throw ConfigError("bump_amplitude and bump_width must be positive");
        for (int i = 0; i < setup.grid.n; ++i) {
            const double d = (setup.grid.nodes[i] - r0) / w;
            setup.init.rho[i] = A * std::exp(-d * d);
        }
    } else if (init == "decaying") {
        for (int i = 0; i < setup.grid.n; ++i)
            setup.init.rho[i] = std::exp(-setup.grid.nodes[i]);
    } else if (init == "file") {
        setup.init.rho = load_profile(cfg.get_string("rho_file"), setup.grid);
        if (cfg.has("u_file"))
            setup.init.u = load_profile(cfg.get_string("u_file"), setup.grid);
    } else {
        throw ConfigError("init must be steady, gaussian-bump, decaying or file, got '" +
                          init + "'");
    }

    // Echo of the effective configuration, defaults included.
    auto& echo = setup.echo.values;
    echo["gamma"] = format_double(setup.params.gamma);
    echo["delta"] = format_double(setup.params.delta);
    echo["a"] = format_double(setup.params.a);
    echo["r_max"] = format_double(r_max);
    echo["n"] = std::to_string(n);
    echo["stretch"] = format_double(stretch);
    echo["eta"] = format_double(setup.params.eta);
    echo["alpha"] = format_double(setup.params.alpha);
    echo["t_end"] = format_double(setup.run.t_end);
    echo["cfl"] = format_double(setup.run.cfl);
    echo["theta"] = format_double(setup.run.theta);
    echo["max_iters"] = std::to_string(setup.run.picard.max_iters);
    echo["gamma_tol"] = format_double(setup.run.picard.gamma_tol);
    echo["output_every"] = std::to_string(setup.run.output_every);
    echo["outer_bc"] = bc;
    echo["limiter"] = lim;
    echo["init"] = init;
    echo["override_admissibility"] =
        setup.run.override_admissibility ? "true" : "false";
    if (init == "gaussian-bump") {
        echo["bump_amplitude"] = format_double(cfg.get_double("bump_amplitude", 0.1));
        echo["bump_center"] = format_double(cfg.get_double(
            "bump_center", setup.params.a + 0.25 * (r_max - setup.params.a)));
        echo["bump_width"] = format_double(cfg.get_double("bump_width", 0.8));
    } else if (init == "steady") {
        echo["steady_rho"] = format_double(cfg.get_double("steady_rho", 1.0));
    } else if (init == "file") {
        echo["rho_file"] = cfg.get_string("rho_file");
        if (cfg.has("u_file")) echo["u_file"] = cfg.get_string("u_file");
    }
    return setup;
}

std::string config_echo_text(const Config& echo) {
    std::string out;
    for (const auto& [key, value] : echo.values) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    }
    return out;
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string format_double17(double x) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

const char* const kSnapshotCsvHeader =
    "t,mass,energy,bd_energy,diss_expansion,diss_shear,rho_sup,r_field_sup,"
    "wlp_u,wlp_v,moment_alpha,log_entropy,ru_l2,rv_l2,v_sup,picard_iters,"
    "gamma_last,admissible_flag";

std::string snapshot_csv(const std::vector<Snapshot>& snapshots, bool admissible) {
    std::string out(kSnapshotCsvHeader);
    out += '\n';
    for (const auto& snap : snapshots) {
        const auto& r = snap.report;
        out += format_double17(snap.t);
        for (double x : {r.mass, r.energy, r.bd_energy, r.diss_expansion,
                         r.diss_shear, r.rho_sup, r.r_field_sup, r.wlp_u, r.wlp_v,
                         r.moment_alpha, r.log_entropy, r.ru_l2, r.rv_l2, r.v_sup}) {
            out += ',';
            out += format_double17(x);
        }
        out += ',';
        out += std::to_string(snap.picard_iters);
        out += ',';
        out += format_double17(snap.gamma_last);
        out += ',';
        out += admissible ? '1' : '0';
        out += '\n';
    }
    return out;
}

}  // namespace sphns
