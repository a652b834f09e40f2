#pragma once

#include "params.hpp"

#include <string>

namespace sphns {

/// Exit-code contract shared by the command layer, the C API and the CLI:
///   0 success / admissible
///   1 configuration or argument error
///   2 not admissible (check only)
///   3 runtime solver failure
///   4 convergence-slope failure (mms only)
struct CommandOutcome {
    int code = 0;
    std::string message;  // human-readable report or error text
};

/// Admissibility verdict for (gamma, delta); prints the full report.  When
/// p > 0 the one-dimensional exponent condition gamma - delta - 1/p is
/// reported as well.  find_threshold additionally locates delta* by
/// bisection to within tol.
CommandOutcome cmd_check(double gamma, double delta, double p = 0.0,
                         bool find_threshold = false, double tol = 1e-6);

/// Full run from a config file; writes the snapshot table to csv_path and,
/// unless summary_path is empty, a JSON summary (config echo, final
/// diagnostics, wall time, step count).
CommandOutcome cmd_run(const std::string& config_path, const std::string& csv_path,
                       const std::string& summary_path);

/// Manufactured-solution convergence study named by the config; the
/// (n, error, slope) table lands in the message.
CommandOutcome cmd_mms(const std::string& config_path);

/// Admissibility sweep over delta (and optionally gamma) ranges; writes
/// rows (delta, gamma, K, p_star, p_max, admissible) to csv_path.
CommandOutcome cmd_sweep(const std::string& config_path, const std::string& csv_path);

}  // namespace sphns
