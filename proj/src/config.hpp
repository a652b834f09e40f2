#pragma once

#include "grid.hpp"
#include "params.hpp"
#include "state.hpp"
#include "stepper.hpp"

#include <map>
#include <string>
#include <vector>

namespace sphns {

/// Parsed `key = value` file: one pair per line, `#` comments, duplicate and
/// unknown keys are hard errors (the schema check happens per subcommand).
struct Config {
    std::map<std::string, std::string> values;

    bool has(const std::string& key) const { return values.count(key) > 0; }
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<int> get_int_list(const std::string& key) const;
};

Config parse_config_text(const std::string& text);
Config parse_config_file(const std::string& path);

/// Everything a run needs, assembled and validated from a config.
struct RunSetup {
    PhysParams params;
    RadialGrid grid;
    PrimitiveState init;  // unshifted density; the stepper adds eta
    RunConfig run;
    Config echo;  // effective values of every run key, for exact reproduction
};

RunSetup build_run_setup(const Config& cfg);

/// Serialize the effective config back to `key = value` text; parsing the
/// result reproduces the same setup bit for bit.
std::string config_echo_text(const Config& echo);

/// Shortest round-trip decimal form of a double (locale independent).
std::string format_double(double x);
/// Fixed-width scientific-free form with 17 significant digits, used by the
/// snapshot tables.
std::string format_double17(double x);

/// Snapshot table with the fixed column set; byte-deterministic for
/// identical inputs.
std::string snapshot_csv(const std::vector<Snapshot>& snapshots, bool admissible);

extern const char* const kSnapshotCsvHeader;

}  // namespace sphns
