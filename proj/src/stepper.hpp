#pragma once

#include "diagnostics.hpp"
#include "grid.hpp"
#include "kernels.hpp"
#include "params.hpp"
#include "state.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sphns {

struct PicardConfig {
    int max_iters = 8;        // >= 1; max_iters == 1 degenerates to a
                              // linearly-implicit single-pass scheme
    double gamma_tol = 1e-8;  // relative contraction tolerance, > 0
    bool track_contraction = true;
};

/// Per-step record of the contraction functionals Gamma^k and their
/// successive ratios.  For converged steps the gammas are nonincreasing
/// after the first entry.
struct ContractionTrace {
    std::vector<double> gammas;
    std::vector<double> ratios;
    int iterations = 0;
    bool converged = false;
};

struct RunConfig {
    double t_end = 1.0;
    double cfl = 0.45;  // <= 0.9
    double eta = 0.0;   // density shift; 0 only valid with strictly positive data
    int output_every = 1;
    double theta = 0.5;
    PicardConfig picard;
    OuterBc outer_bc = OuterBc::dirichlet_zero;
    Limiter limiter = Limiter::none;
    bool override_admissibility = false;
};

/// Shifted initial state: rho~ = rho0 + eta with derived (h, phi, v).
/// The far field of the shifted problem sits at
/// (eta, eta^(gamma-delta), 2 eta^(delta-1), 0).
ReformState regularize_initial(const RadialGrid& grid, const PhysParams& params,
                               std::span<const double> rho0,
                               std::span<const double> u0, double eta);

/// Discrete L2 norm of g = 2 rho0^(delta-1) (u0_r + 2 u0/r)_r, the function
/// the initial compatibility condition asks to be square integrable.
/// Reported alongside runs; never used to reject data.
double compatibility_g_l2(const RadialGrid& grid, const PhysParams& params,
                          std::span<const double> rho0,
                          std::span<const double> u0);

/// Largest stable step at the current state: the acoustic CFL bound
/// cfl * min(dr) / max(|u| + c_s), the explicit stretching-source bound, and
/// a 1.2x growth cap relative to prev_dt (pass 0 to disable the cap).
double stable_dt(const ReformState& s, const RadialGrid& grid,
                 const PhysParams& params, double cfl, double prev_dt = 0.0);

/// True when the sequence ends with `runs` consecutive strict increases —
/// the picard_step abort condition.
bool contraction_failed(std::span<const double> gammas, int runs = 3);

/// One time step by frozen-coefficient Picard iteration over the linearized
/// system.  Iterate k advances every field from the time level with the
/// advecting velocity frozen at iterate k-1 (k = 1 uses the previous time
/// level), then measures
///   Gamma^k = |rho_diff|^2 + |phi_diff|^2 + |v_diff|^2 + |(h phi)_diff|^2
///           + |h_diff|^2 + |sqrt(h) u_diff|^2
/// in the plain discrete L2 norm, stopping at Gamma^k <= gamma_tol * scale.
/// Raises SolverError(non_contraction) when Gamma grows three iterations in
/// a row.
std::pair<ReformState, ContractionTrace> picard_step(const ReformState& s,
                                                     double dt,
                                                     const RadialGrid& grid,
                                                     const PhysParams& params,
                                                     const RunConfig& cfg);

struct Snapshot {
    double t = 0.0;
    int step = 0;
    int picard_iters = 0;
    double gamma_last = 0.0;
    ReformState state;
    DiagnosticsReport report;
};

struct RunResult {
    std::vector<Snapshot> snapshots;
    ReformState final_state;
    int total_steps = 0;
    bool admissible = false;
};

/// Integrate to t_end with adaptive dt, emitting a snapshot every
/// output_every accepted steps (plus the initial and final states).
/// Solver errors propagate with the failing time attached.
RunResult run(const PrimitiveState& init, const RunConfig& cfg,
              const PhysParams& params, const RadialGrid& grid);

struct EtaContinuationEntry {
    double eta = 0.0;
    std::optional<ReformState> final_state;
    std::string error;  // empty on success
};

struct EtaContinuationResult {
    std::vector<EtaContinuationEntry> entries;
    // distances[j] = || (rho^{eta_j} - eta_j) - (rho^{eta_{j+1}} - eta_{j+1}) ||_2
    // at t_end; NaN when either member failed.
    std::vector<double> distances;
};

/// Same problem solved at each eta of a strictly decreasing sequence; the
/// members run concurrently and failures do not stop the remaining etas.
EtaContinuationResult eta_continuation(const PrimitiveState& init,
                                       std::span<const double> etas,
                                       const RunConfig& cfg,
                                       const PhysParams& params,
                                       const RadialGrid& grid);

}  // namespace sphns
