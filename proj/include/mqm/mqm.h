/* C API for the magnetic-quadrupole Landau-analogue library.
 *
 * All functions are thread-compatible: distinct mqm_system handles may be
 * used concurrently; a single handle must not be shared between threads
 * without external synchronization. Natural units, hbar = c = 1.
 */
#ifndef MQM_MQM_H
#define MQM_MQM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    MQM_OK = 0,
    MQM_ERR_INVALID = 1,     /* bad argument or inadmissible configuration */
    MQM_ERR_DOMAIN = 2,      /* mathematical domain error */
    MQM_ERR_CONVERGENCE = 3, /* series or solver failed to converge */
    MQM_ERR_SEARCH = 4,      /* root/bracket search exhausted its window */
    MQM_ERR_INTERNAL = 5
} mqm_status;

typedef enum {
    MQM_SCENARIO_LANDAU = 0,
    MQM_SCENARIO_HARDWALL = 1,
    MQM_SCENARIO_COULOMB = 2, /* scalar potential alpha/rho */
    MQM_SCENARIO_LINEAR = 3   /* scalar potential eta*rho */
} mqm_scenario;

typedef struct mqm_system mqm_system;

const char* mqm_status_name(mqm_status status);

mqm_system* mqm_system_create(void);
void mqm_system_destroy(mqm_system* sys);

/* Message of the most recent failing call on this handle. */
const char* mqm_system_last_error(const mqm_system* sys);

mqm_status mqm_system_configure(mqm_system* sys, mqm_scenario scenario,
                                double m, double Mq, double b);
mqm_status mqm_system_set_alpha(mqm_system* sys, double alpha);
mqm_status mqm_system_set_eta(mqm_system* sys, double eta);
mqm_status mqm_system_set_rho0(mqm_system* sys, double rho0);

/* Returns the number of violated invariants for (n, l) under the configured
 * scenario (0 = admissible), writing newline-separated messages into buf.
 * Returns -1 on invalid arguments. */
int mqm_system_validate(mqm_system* sys, int n, int l, char* buf, size_t buflen);

/* Analytic energy for (n, l). Landau: closed form; hard wall: exact
 * hypergeometric root; potential scenarios: closed form at varpi (pass
 * varpi <= 0 to resolve the first allowed frequency automatically).
 * frequency receives omega or varpi; either output may be NULL. */
mqm_status mqm_energy(mqm_system* sys, int n, int l, double varpi,
                      double* energy, double* frequency);

/* Large-n closed-form approximation of the hard-wall spectrum. */
mqm_status mqm_hardwall_energy_approx(mqm_system* sys, int n, int l, double* energy);

/* All allowed angular frequencies at (n, l); *count receives the number of
 * roots found (possibly 0, which is a warning, not an error). At most
 * capacity roots are stored. */
mqm_status mqm_allowed_frequencies(mqm_system* sys, int n, int l, double* roots,
                                   int capacity, int* count);

/* Closed-form n=1 allowed frequency. */
mqm_status mqm_allowed_frequency_n1(mqm_system* sys, int l, double* varpi);

/* Normalized truncation residual at trial frequency varpi; a zero marks an
 * allowed frequency. */
mqm_status mqm_truncation_residual(mqm_system* sys, int n, int l, double varpi,
                                   double* residual);

/* Analytic level vs the finite-difference eigensolver. grid_cells <= 0 uses
 * the default grid. Outputs may individually be NULL. */
mqm_status mqm_verify_level(mqm_system* sys, int n, int l, double varpi,
                            int grid_cells, double* energy_analytic,
                            double* energy_numeric, double* frequency,
                            double* overlap_out);

/* Field-identity residuals sampled on a grid: max |curl E + dB/dt|,
 * max |sum_ij T_ij d_j B_i|, and the spread of the effective field across
 * the grid, all at finite-difference step h. */
mqm_status mqm_fields_residuals(mqm_system* sys, double h, double* max_faraday,
                                double* max_moment_dot_b, double* uniformity_spread);

/* Measured convergence order of the two residual operators between h and
 * h/2, on a smooth reference field. */
mqm_status mqm_fields_probe_orders(mqm_system* sys, double h,
                                   double* faraday_order, double* moment_dot_b_order);

/* Stateless special-function entry points. */
mqm_status mqm_kummer_1f1(double a, double c, double x, double tol, double* value);
mqm_status mqm_kummer_large_a(double a_bar, double b_bar, double x0, double* value);

#ifdef __cplusplus
}
#endif

#endif /* MQM_MQM_H */
