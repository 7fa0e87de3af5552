/* skyrme.h - C interface to the strong-field equivariant Skyrme
 * self-similar blow-up laboratory.
 *
 * All stateful objects are opaque handles released with the matching
 * _free function. Fallible calls return skyrme_status; on error a
 * thread-local message is available from skyrme_last_error().
 */
#ifndef SKYRME_H
#define SKYRME_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum skyrme_status {
  SKYRME_OK = 0,
  SKYRME_ERR_INVALID_ARGUMENT = 1,
  SKYRME_ERR_BRACKET = 2,      /* shooting found no sign change */
  SKYRME_ERR_INSTABILITY = 3,  /* |v| left its bound inside the cone */
  SKYRME_ERR_LINE_SEARCH = 4,  /* descent could not make progress */
  SKYRME_ERR_IO = 5,
  SKYRME_ERR_INTERNAL = 6
} skyrme_status;

const char* skyrme_version(void);
const char* skyrme_last_error(void);

/* ---------- closed-form profile oracle ---------- */

/* y(rho) = 5(1-rho^2)/(5+3rho^2); the _extended variant accepts any rho. */
skyrme_status skyrme_closed_form(double rho, double* y);
double skyrme_closed_form_extended(double rho);
double skyrme_closed_form_deriv(double rho);

/* residual of the profile equation at a general sample */
skyrme_status skyrme_ode_residual(double y, double dy, double d2y, double rho, double* out);
/* substitution residual of the closed form (cancellation-free) */
skyrme_status skyrme_closed_form_residual(double rho, double* out);

/* ---------- shooting profile ---------- */

typedef struct skyrme_profile skyrme_profile;

typedef struct skyrme_profile_options {
  size_t n;      /* output grid subintervals (default 4096) */
  double eps;    /* series matching radius (default 1e-4)   */
  double step;   /* integrator step (default 1e-4)          */
  double tol;    /* root tolerance on c (default 1e-10)     */
} skyrme_profile_options;

void skyrme_profile_options_init(skyrme_profile_options* opt);

skyrme_status skyrme_profile_solve(const skyrme_profile_options* opt, skyrme_profile** out);
void skyrme_profile_free(skyrme_profile* p);

double skyrme_profile_c_shoot(const skyrme_profile* p);
double skyrme_profile_residual_sup(const skyrme_profile* p);
double skyrme_profile_max_oracle_gap(const skyrme_profile* p);
int skyrme_profile_branch(const skyrme_profile* p);
size_t skyrme_profile_node_count(const skyrme_profile* p);
/* copy up to cap nodes of (rho, y, dy); any output pointer may be NULL */
skyrme_status skyrme_profile_copy_nodes(const skyrme_profile* p, double* rho, double* y,
                                        double* dy, size_t cap);
/* cubic interpolation of y and dy at a point of [0,1] */
skyrme_status skyrme_profile_eval(const skyrme_profile* p, double rho, double* y, double* dy);
/* rho,y,dy,w,dw,residual rows at 17 significant digits */
skyrme_status skyrme_profile_write_csv(const skyrme_profile* p, const char* path);

/* one shot of the integrator: returns the miss function at c */
skyrme_status skyrme_shoot_miss(double c, double eps, double step, double* miss, int* diverged);

/* ---------- variational functional ---------- */

double skyrme_potential_F(double psi);
double skyrme_potential_F_prime(double psi);

/* fields live on the interior-offset grid of [0,1] with n values */
skyrme_status skyrme_functional_J(const double* psi, size_t n, double* out);
skyrme_status skyrme_functional_gradient(const double* psi, size_t n, double* grad);
skyrme_status skyrme_second_variation(const double* ybar, const double* eta, size_t n,
                                      double* out);
skyrme_status skyrme_hardy_quotient(const double* eta, size_t n, double* out);
skyrme_status skyrme_monotonize(const double* psi, size_t n, double* out);

typedef struct skyrme_minimize_result skyrme_minimize_result;

typedef struct skyrme_minimize_options {
  size_t n;         /* grid subintervals (default 1024)          */
  size_t max_iter;  /* iteration budget (default 3000000)        */
  double tol;       /* gradient-norm stopping value (default 2e-4) */
} skyrme_minimize_options;

void skyrme_minimize_options_init(skyrme_minimize_options* opt);

/* init = NULL starts from 1 - rho^2 */
skyrme_status skyrme_minimize_run(const skyrme_minimize_options* opt, const double* init,
                                  skyrme_minimize_result** out);
void skyrme_minimize_result_free(skyrme_minimize_result* r);

double skyrme_minimize_J(const skyrme_minimize_result* r);
double skyrme_minimize_grad_norm(const skyrme_minimize_result* r);
size_t skyrme_minimize_iterations(const skyrme_minimize_result* r);
int skyrme_minimize_converged(const skyrme_minimize_result* r);
int skyrme_minimize_monotone(const skyrme_minimize_result* r);
double skyrme_minimize_max_abs_psi(const skyrme_minimize_result* r);
double skyrme_minimize_c0_estimate(const skyrme_minimize_result* r);
size_t skyrme_minimize_node_count(const skyrme_minimize_result* r);
skyrme_status skyrme_minimize_copy_psi(const skyrme_minimize_result* r, double* rho, double* psi,
                                       size_t cap);
skyrme_status skyrme_minimize_write_iterates_csv(const skyrme_minimize_result* r,
                                                 const char* path);
/* sup gap to the closed-form profile */
double skyrme_minimize_oracle_gap(const skyrme_minimize_result* r);

/* ---------- phase-space system ---------- */

/* state is (y, q, rho) with q = rho y_rho */
void skyrme_vector_field(const double state[3], double out[3]);
void skyrme_jacobian(const double state[3], double out[9] /* row-major */);

typedef struct skyrme_spectral_report {
  double eigenvalues_re[3];
  double eigenvalues_im[3];
  double eigenvectors_re[9]; /* row i = eigenvector i */
  double eigenvectors_im[9];
  double charpoly_residual;
} skyrme_spectral_report;

skyrme_status skyrme_eigen(const double state[3], skyrme_spectral_report* out);

typedef struct skyrme_trajectory skyrme_trajectory;

skyrme_status skyrme_flow(const double start[3], double tau_end, double h,
                          skyrme_trajectory** out);
/* integrate until rho reaches rho_target */
skyrme_status skyrme_flow_to_rho(const double start[3], double rho_target, double h,
                                 skyrme_trajectory** out);
void skyrme_trajectory_free(skyrme_trajectory* t);
size_t skyrme_trajectory_size(const skyrme_trajectory* t);
int skyrme_trajectory_truncated(const skyrme_trajectory* t);
skyrme_status skyrme_trajectory_copy(const skyrme_trajectory* t, double* tau, double* y,
                                     double* q, double* rho, size_t cap);
skyrme_status skyrme_trajectory_write_csv(const skyrme_trajectory* t, const char* path);

typedef struct skyrme_heteroclinic_report {
  double tangent_residual_sup;
  double q_tilde;
  double start_gap;
  double end_gap;
} skyrme_heteroclinic_report;

skyrme_status skyrme_heteroclinic_check(const skyrme_profile* p,
                                        skyrme_heteroclinic_report* out);

/* ---------- wave evolution ---------- */

typedef struct skyrme_evolution skyrme_evolution;

typedef struct skyrme_evolution_options {
  size_t n;           /* radial subintervals (default 4096)       */
  double R;           /* outer radius (default 2.0, must be < sqrt 5) */
  double t_end;       /* stop time in (-1, 0) (default -0.25)      */
  int frozen_boundary; /* 1 = hold outer value fixed (default 0)   */
  double sample_interval; /* diagnostics cadence (default 0.05)    */
} skyrme_evolution_options;

void skyrme_evolution_options_init(skyrme_evolution_options* opt);

skyrme_status skyrme_evolution_run(const skyrme_profile* p,
                                   const skyrme_evolution_options* opt, skyrme_evolution** out);
void skyrme_evolution_free(skyrme_evolution* e);

size_t skyrme_evolution_sample_count(const skyrme_evolution* e);
/* columns: t, sup_grad, energy, flux_accum, selfsim_err; any may be NULL */
skyrme_status skyrme_evolution_copy_samples(const skyrme_evolution* e, double* t,
                                            double* sup_grad, double* energy,
                                            double* flux_accum, double* selfsim_err, size_t cap);
double skyrme_evolution_exponent(const skyrme_evolution* e);
double skyrme_evolution_amplitude(const skyrme_evolution* e);
double skyrme_evolution_final_time(const skyrme_evolution* e);
skyrme_status skyrme_evolution_write_diagnostics_csv(const skyrme_evolution* e,
                                                     const char* path);
/* snapshot index k of the evolution's stored states (r, v, vt, u) */
size_t skyrme_evolution_snapshot_count(const skyrme_evolution* e);
double skyrme_evolution_snapshot_time(const skyrme_evolution* e, size_t k);
skyrme_status skyrme_evolution_write_snapshot_csv(const skyrme_evolution* e, size_t k,
                                                  const char* path);

skyrme_status skyrme_blowup_fit(const double* t, const double* sup_grad, size_t count,
                                double* exponent, double* amplitude);

/* ---------- consistency suite ---------- */

typedef struct skyrme_verify_report {
  double ode_residual_max;
  double angle_residual_max;
  double pde_residual_max;
  double literal_min_abs;
  int ode_ok;
  int angle_ok;
  int pde_ok;
  int literal_rejected;
  int passed;
} skyrme_verify_report;

skyrme_status skyrme_verify(int literal_mode, skyrme_verify_report* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SKYRME_H */
