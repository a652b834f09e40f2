/* sphns — spherically symmetric compressible Navier-Stokes solver with
 * density-dependent degenerate viscosity.
 *
 * C interface of the shared library: opaque simulation handles, plain
 * structs for reports, integer status codes.  All functions are safe to call
 * from multiple threads as long as a given sphns_sim handle is used by one
 * thread at a time.  Error details for the calling thread are available via
 * sphns_last_error().
 */
#ifndef SPHNS_H
#define SPHNS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef SPHNS_API
#define SPHNS_API __attribute__((visibility("default")))
#endif

/* Status codes double as process exit codes in the CLI. */
typedef enum sphns_status {
    SPHNS_OK = 0,
    SPHNS_ERR_CONFIG = 1,         /* bad arguments or configuration */
    SPHNS_NOT_ADMISSIBLE = 2,     /* check verdict: condition fails */
    SPHNS_ERR_SOLVER = 3,         /* runtime solver failure */
    SPHNS_ERR_SLOPE = 4           /* convergence-order gate failed */
} sphns_status;

/* ------------------------------------------------------------------ */
/* Admissibility algebra                                               */
/* ------------------------------------------------------------------ */

typedef struct sphns_admissibility {
    double gamma;
    double delta;
    double k;       /* K(delta) = 2 delta (2 delta - 1) / (1 - delta)^2 */
    double p_star;  /* (4 - 2 delta) / (1 - delta) */
    double p_min;
    double p_max;
    int delta_in_law_range; /* 2/3 <= delta < 1 */
    int admissible;
    char reason[128];       /* empty when admissible */
} sphns_admissibility;

SPHNS_API sphns_status sphns_k_of_delta(double delta, double* out);
SPHNS_API sphns_status sphns_p_star(double delta, double* out);
SPHNS_API sphns_status sphns_p_range(double delta, double* p_min, double* p_max);
/* Always fills the report; returns SPHNS_OK when admissible,
 * SPHNS_NOT_ADMISSIBLE otherwise. */
SPHNS_API sphns_status sphns_check(double gamma, double delta,
                                   sphns_admissibility* out);
/* Bisection root of p_star - p_max on (2/3, 1). */
SPHNS_API sphns_status sphns_find_delta_star(double tol, double* out);
/* gamma - delta - 1/p >= 0, the one-dimensional exponent condition. */
SPHNS_API sphns_status sphns_exponent_condition(double gamma, double delta,
                                                double p, int* holds);

/* C^1 cutoff weight used by the moment bookkeeping, with derivative. */
SPHNS_API sphns_status sphns_cutoff_weight(double s, double* value,
                                           double* derivative);

/* ------------------------------------------------------------------ */
/* Command layer (same semantics and exit codes as the CLI)            */
/* ------------------------------------------------------------------ */

/* Run a configured simulation; writes the snapshot CSV and, when
 * summary_path is non-NULL, a JSON summary. */
SPHNS_API sphns_status sphns_cmd_run(const char* config_path,
                                     const char* csv_path,
                                     const char* summary_path);

/* Manufactured-solution convergence study.  *table_out (may be NULL)
 * receives the printable (n, error, slope) table; free it with
 * sphns_string_free. */
SPHNS_API sphns_status sphns_cmd_mms(const char* config_path, char** table_out);

/* Admissibility sweep over configured ranges, written as CSV. */
SPHNS_API sphns_status sphns_cmd_sweep(const char* config_path,
                                       const char* csv_path);

/* ------------------------------------------------------------------ */
/* Simulation handles                                                  */
/* ------------------------------------------------------------------ */

typedef struct sphns_sim sphns_sim; /* opaque */

typedef enum sphns_field {
    SPHNS_FIELD_RHO = 0,
    SPHNS_FIELD_H = 1,
    SPHNS_FIELD_PHI = 2,
    SPHNS_FIELD_V = 3,
    SPHNS_FIELD_U = 4,
    SPHNS_FIELD_NODES = 5
} sphns_field;

typedef struct sphns_diagnostics {
    double mass;
    double energy;
    double bd_energy;
    double diss_expansion;
    double diss_shear;
    double rho_sup;
    double r_field_sup;
    double wlp_u;
    double wlp_v;
    double moment_alpha;
    double log_entropy;
    double ru_l2;
    double rv_l2;
    double v_sup;
} sphns_diagnostics;

/* Create a simulation from a run-config file or from config text.  The
 * handle owns its state; destroy it with sphns_sim_close. */
SPHNS_API sphns_status sphns_sim_open(const char* config_path, sphns_sim** out);
SPHNS_API sphns_status sphns_sim_open_text(const char* config_text,
                                           sphns_sim** out);
SPHNS_API void sphns_sim_close(sphns_sim* sim);

SPHNS_API int sphns_sim_cell_count(const sphns_sim* sim);
SPHNS_API double sphns_sim_time(const sphns_sim* sim);

/* Advance with adaptive steps until the simulation time reaches t_target. */
SPHNS_API sphns_status sphns_sim_advance(sphns_sim* sim, double t_target);

SPHNS_API sphns_status sphns_sim_diagnostics(const sphns_sim* sim,
                                             sphns_diagnostics* out);

/* Copy a field (or the node radii) into buf; len must equal the cell count. */
SPHNS_API sphns_status sphns_sim_field(const sphns_sim* sim, sphns_field which,
                                       double* buf, size_t len);

/* ------------------------------------------------------------------ */
/* Diagnostics of the library itself                                   */
/* ------------------------------------------------------------------ */

/* Message of the last failure on this thread (never NULL). */
SPHNS_API const char* sphns_last_error(void);

SPHNS_API void sphns_string_free(char* s);

SPHNS_API const char* sphns_version(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPHNS_H */
