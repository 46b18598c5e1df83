/* C interface to the position-dependent-mass oscillator and its
 * Gazeau-Klauder coherent states.
 *
 * Every fallible call returns a pdmgk_status. On failure the message is
 * available from pdmgk_last_error() on the calling thread until the next
 * failing call on that thread. Handles are opaque; a handle may be shared
 * between threads for reading, none of the calls mutate it.
 */
#ifndef PDMGK_H
#define PDMGK_H

#include <stddef.h>

#if defined(_WIN32)
#define PDMGK_API __declspec(dllexport)
#else
#define PDMGK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pdmgk_status {
  PDMGK_OK = 0,
  PDMGK_INVALID_ARGUMENT = 1,
  PDMGK_DOMAIN = 2,
  PDMGK_OVERFLOW = 3,
  PDMGK_NONCONVERGENCE = 4,
  PDMGK_TRUNCATION = 5,
  PDMGK_INCOMPATIBLE = 6,
  PDMGK_BUFFER_TOO_SMALL = 7,
  PDMGK_INTERNAL = 99
} pdmgk_status;

typedef enum pdmgk_energy_convention {
  PDMGK_ENERGY_EIGENVALUE = 0,
  PDMGK_ENERGY_PRINTED = 1
} pdmgk_energy_convention;

typedef enum pdmgk_kernel {
  PDMGK_KERNEL_PAPER = 0,
  PDMGK_KERNEL_FOCK = 1
} pdmgk_kernel;

typedef enum pdmgk_level { PDMGK_LEVEL_FAST = 0, PDMGK_LEVEL_FULL = 1 } pdmgk_level;

typedef struct pdmgk_params {
  double m0;
  double omega;
  double hbar;
  double alpha; /* 0 < alpha < 1 */
  int convention; /* pdmgk_energy_convention */
} pdmgk_params;

typedef struct pdmgk_derived {
  double kappa;
  double lambda;
  double a; /* e_n = a n^2 + b n */
  double b;
} pdmgk_derived;

typedef struct pdmgk_statistics {
  double J;
  double mean_n;
  double mean_n2;
  double g2;
  double mandel_q;
  double sum_p;
  /* gap between closed forms and series sums */
  double residual;
} pdmgk_statistics;

typedef struct pdmgk_wigner_summary {
  double min_value;
  double max_value;
  double negative_fraction;
  double integral;
} pdmgk_wigner_summary;

typedef struct pdmgk_model pdmgk_model;
typedef struct pdmgk_state pdmgk_state;
typedef struct pdmgk_wigner_grid pdmgk_wigner_grid;

PDMGK_API const char *pdmgk_version(void);
PDMGK_API const char *pdmgk_last_error(void);
PDMGK_API const char *pdmgk_status_name(pdmgk_status status);

/* m0 = omega = hbar = 1, alpha = 0.2, eigenvalue convention. */
PDMGK_API void pdmgk_params_default(pdmgk_params *out);

/* Model: parameters plus the moment table and weight function. */
PDMGK_API pdmgk_status pdmgk_model_create(const pdmgk_params *params,
                                          pdmgk_model **out);
PDMGK_API void pdmgk_model_destroy(pdmgk_model *model);
PDMGK_API pdmgk_status pdmgk_model_derived(const pdmgk_model *model,
                                           pdmgk_derived *out);

PDMGK_API pdmgk_status pdmgk_mass(const pdmgk_model *model, double x,
                                  double *out);
/* E_n in energy units and e_n = a n^2 + b n in units of hbar omega. */
PDMGK_API pdmgk_status pdmgk_energy(const pdmgk_model *model, size_t n,
                                    double *E, double *e);
PDMGK_API pdmgk_status pdmgk_eigenfunction(const pdmgk_model *model, size_t n,
                                           double x, double *phi);
/* grid must be uniform and increasing, npts >= 17. */
PDMGK_API pdmgk_status pdmgk_ode_residual(const pdmgk_model *model, size_t n,
                                          const double *grid, size_t npts,
                                          double *residual,
                                          int *grid_too_coarse);

/* W(J) = N^2(J) Wbar(J); either output may be NULL. */
PDMGK_API pdmgk_status pdmgk_weight(const pdmgk_model *model, double J,
                                    double *W, double *Wbar);
/* int_0^inf Wbar J^n dJ by quadrature, and rho_n. */
PDMGK_API pdmgk_status pdmgk_weight_moment(const pdmgk_model *model, size_t n,
                                           double *measured, double *expected);

/* P_0 .. P_{count-1}. Pass P = NULL to query count. */
PDMGK_API pdmgk_status pdmgk_photon_distribution(const pdmgk_model *model,
                                                 double J, double *P,
                                                 size_t capacity,
                                                 size_t *count);
PDMGK_API pdmgk_status pdmgk_statistics_at(const pdmgk_model *model, double J,
                                           pdmgk_statistics *out);
PDMGK_API pdmgk_status pdmgk_solve_peak_j(const pdmgk_model *model,
                                          size_t n_star, double *J);

/* States. */
PDMGK_API pdmgk_status pdmgk_state_create(const pdmgk_model *model, double J,
                                          double gamma, pdmgk_state **out);
PDMGK_API void pdmgk_state_destroy(pdmgk_state *state);
PDMGK_API size_t pdmgk_state_size(const pdmgk_state *state);
PDMGK_API pdmgk_status pdmgk_state_coeffs(const pdmgk_state *state, double *re,
                                          double *im, size_t capacity,
                                          size_t *count);
PDMGK_API pdmgk_status pdmgk_state_overlap(const pdmgk_state *s1,
                                           const pdmgk_state *s2, double *re,
                                           double *im);
/* gamma -> gamma + nu t */
PDMGK_API pdmgk_status pdmgk_state_evolve(const pdmgk_state *state, double nu,
                                          double t, pdmgk_state **out);
PDMGK_API pdmgk_status pdmgk_wigner(const pdmgk_state *state, int kernel,
                                    double re, double im, double *out);

/* Square grid [-half_width, half_width]^2, npts per axis (>= 16). */
PDMGK_API pdmgk_status pdmgk_wigner_grid_create(const pdmgk_state *state,
                                                double half_width, size_t npts,
                                                int kernel,
                                                pdmgk_wigner_grid **out);
PDMGK_API void pdmgk_wigner_grid_destroy(pdmgk_wigner_grid *grid);
PDMGK_API size_t pdmgk_wigner_grid_npts(const pdmgk_wigner_grid *grid);
/* Shared axis for Re z and Im z, npts entries. */
PDMGK_API const double *pdmgk_wigner_grid_axis(const pdmgk_wigner_grid *grid);
/* Row-major, values[i * npts + j] at z = axis[j] + i axis[i]. */
PDMGK_API const double *pdmgk_wigner_grid_values(const pdmgk_wigner_grid *grid);
PDMGK_API void pdmgk_wigner_grid_summary(const pdmgk_wigner_grid *grid,
                                         pdmgk_wigner_summary *out);

/* Runs the verification battery. *json receives a report that must be
 * released with pdmgk_string_free; *overall is 1 when every check passed. */
PDMGK_API pdmgk_status pdmgk_verify_run(const pdmgk_params *params, int level,
                                        int corrupt_spectrum, char **json,
                                        int *overall);
PDMGK_API void pdmgk_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif /* PDMGK_H */
