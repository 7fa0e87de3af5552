#include "skyrme/skyrme.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "dynsys/system.hpp"
#include "evolution/solver.hpp"
#include "profile/closed_form.hpp"
#include "profile/shooting.hpp"
#include "radial/grid.hpp"
#include "variational/functional.hpp"
#include "verify/consistency.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : "unknown error"; }

template <typename Fn>
skyrme_status wrap(Fn&& fn) {
  try {
    fn();
    return SKYRME_OK;
  } catch (const skyrme::profile::bracket_error& e) {
    set_error(e.what());
    return SKYRME_ERR_BRACKET;
  } catch (const skyrme::evolution::instability_error& e) {
    set_error(e.what());
    return SKYRME_ERR_INSTABILITY;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return SKYRME_ERR_INVALID_ARGUMENT;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return SKYRME_ERR_INVALID_ARGUMENT;
  } catch (const std::runtime_error& e) {
    set_error(e.what());
    return SKYRME_ERR_IO;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SKYRME_ERR_INTERNAL;
  }
}

skyrme::radial::RadialField field_on_unit_grid(const double* values, size_t n) {
  auto grid = skyrme::radial::make_grid(n, 1.0, skyrme::radial::GridKind::InteriorOffset);
  skyrme::radial::RadialField f = skyrme::radial::zero_field(grid);
  for (size_t j = 0; j < n; ++j) f[j] = values[j];
  return f;
}

}  // namespace

struct skyrme_profile {
  skyrme::profile::ProfileSolution sol;
};

struct skyrme_minimize_result {
  skyrme::variational::MinimizeResult res;
};

struct skyrme_trajectory {
  skyrme::dynsys::Trajectory traj;
};

struct skyrme_evolution {
  skyrme::evolution::EvolveResult run;
};

extern "C" {

const char* skyrme_version(void) { return "1.0.0"; }

const char* skyrme_last_error(void) { return g_last_error.c_str(); }

/* ---------- closed form ---------- */

skyrme_status skyrme_closed_form(double rho, double* y) {
  if (!y) {
    set_error("null output pointer");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] { *y = skyrme::profile::closed_form(rho); });
}

double skyrme_closed_form_extended(double rho) { return skyrme::profile::rational_profile(rho); }

double skyrme_closed_form_deriv(double rho) {
  return skyrme::profile::rational_profile_deriv(rho);
}

skyrme_status skyrme_ode_residual(double y, double dy, double d2y, double rho, double* out) {
  if (!out) {
    set_error("null output pointer");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] { *out = skyrme::profile::ode_residual(y, dy, d2y, rho); });
}

skyrme_status skyrme_closed_form_residual(double rho, double* out) {
  if (!out) {
    set_error("null output pointer");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] { *out = skyrme::profile::closed_form_residual(rho); });
}

/* ---------- profile ---------- */

void skyrme_profile_options_init(skyrme_profile_options* opt) {
  if (!opt) return;
  opt->n = 4096;
  opt->eps = 1e-4;
  opt->step = 1e-4;
  opt->tol = 1e-10;
}

skyrme_status skyrme_profile_solve(const skyrme_profile_options* opt, skyrme_profile** out) {
  if (!out) {
    set_error("null output pointer");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  skyrme_profile_options def;
  skyrme_profile_options_init(&def);
  const skyrme_profile_options& o = opt ? *opt : def;
  return wrap([&] {
    auto* p = new skyrme_profile{
        skyrme::profile::solve_profile(o.tol, o.n, o.eps, o.step)};
    *out = p;
  });
}

void skyrme_profile_free(skyrme_profile* p) { delete p; }

double skyrme_profile_c_shoot(const skyrme_profile* p) { return p->sol.c_shoot; }
double skyrme_profile_residual_sup(const skyrme_profile* p) { return p->sol.residual_sup; }
double skyrme_profile_max_oracle_gap(const skyrme_profile* p) {
  return skyrme::profile::max_closed_form_gap(p->sol);
}
int skyrme_profile_branch(const skyrme_profile* p) { return p->sol.branch; }
size_t skyrme_profile_node_count(const skyrme_profile* p) { return p->sol.y.size(); }

skyrme_status skyrme_profile_copy_nodes(const skyrme_profile* p, double* rho, double* y,
                                        double* dy, size_t cap) {
  if (!p) {
    set_error("null handle");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  const size_t n = std::min(cap, p->sol.y.size());
  for (size_t j = 0; j < n; ++j) {
    if (rho) rho[j] = p->sol.y.grid->node(j);
    if (y) y[j] = p->sol.y[j];
    if (dy) dy[j] = p->sol.dy[j];
  }
  return SKYRME_OK;
}

skyrme_status skyrme_profile_eval(const skyrme_profile* p, double rho, double* y, double* dy) {
  if (!p) {
    set_error("null handle");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] {
    const auto& nodes = p->sol.y.grid->nodes();
    if (rho >= nodes.front() && rho <= nodes.back()) {
      if (y) *y = skyrme::radial::interpolate(p->sol.y, rho);
      if (dy) *dy = skyrme::radial::interpolate(p->sol.dy, rho);
    } else if (rho >= 0.0 && rho <= 1.0) {
      if (y) *y = skyrme::radial::extrapolate(p->sol.y, rho);
      if (dy) *dy = skyrme::radial::extrapolate(p->sol.dy, rho);
    } else {
      throw std::domain_error("profile evaluation point outside [0,1]");
    }
  });
}

skyrme_status skyrme_profile_write_csv(const skyrme_profile* p, const char* path) {
  if (!p || !path) {
    set_error("null argument");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] { skyrme::profile::write_profile_csv(path, p->sol); });
}

skyrme_status skyrme_shoot_miss(double c, double eps, double step, double* miss, int* diverged) {
  if (!miss) {
    set_error("null output pointer");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] {
    const auto shot = skyrme::profile::shoot(c, eps, step);
    *miss = shot.miss;
    if (diverged) *diverged = shot.diverged ? 1 : 0;
  });
}

/* ---------- variational ---------- */

double skyrme_potential_F(double psi) { return skyrme::variational::Potential{}.F(psi); }
double skyrme_potential_F_prime(double psi) { return skyrme::variational::Potential{}.dF(psi); }

skyrme_status skyrme_functional_J(const double* psi, size_t n, double* out) {
  if (!psi || !out) {
    set_error("null argument");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] { *out = skyrme::variational::evaluate_J(field_on_unit_grid(psi, n)); });
}

skyrme_status skyrme_functional_gradient(const double* psi, size_t n, double* grad) {
  if (!psi || !grad) {
    set_error("null argument");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] {
    const auto g = skyrme::variational::gradient_J(field_on_unit_grid(psi, n));
    std::memcpy(grad, g.values.data(), n * sizeof(double));
  });
}

skyrme_status skyrme_second_variation(const double* ybar, const double* eta, size_t n,
                                      double* out) {
  if (!ybar || !eta || !out) {
    set_error("null argument");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] {
    *out = skyrme::variational::second_variation(field_on_unit_grid(ybar, n),
                                                 field_on_unit_grid(eta, n));
  });
}

skyrme_status skyrme_hardy_quotient(const double* eta, size_t n, double* out) {
  if (!eta || !out) {
    set_error("null argument");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] { *out = skyrme::variational::hardy_quotient(field_on_unit_grid(eta, n)); });
}

skyrme_status skyrme_monotonize(const double* psi, size_t n, double* out) {
  if (!psi || !out) {
    set_error("null argument");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] {
    const auto m = skyrme::variational::monotonize(field_on_unit_grid(psi, n));
    std::memcpy(out, m.values.data(), n * sizeof(double));
  });
}

void skyrme_minimize_options_init(skyrme_minimize_options* opt) {
  if (!opt) return;
  opt->n = 1024;
  opt->max_iter = 3000000;
  opt->tol = 2e-4;
}

skyrme_status skyrme_minimize_run(const skyrme_minimize_options* opt, const double* init,
                                  skyrme_minimize_result** out) {
  if (!out) {
    set_error("null output pointer");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  skyrme_minimize_options def;
  skyrme_minimize_options_init(&def);
  const skyrme_minimize_options& o = opt ? *opt : def;
  return wrap([&] {
    auto grid = skyrme::radial::make_grid(o.n, 1.0, skyrme::radial::GridKind::InteriorOffset);
    skyrme::radial::RadialField start = skyrme::radial::zero_field(grid);
    if (init) {
      for (size_t j = 0; j < o.n; ++j) start[j] = init[j];
    } else {
      for (size_t j = 0; j < o.n; ++j) {
        const double rho = grid->node(j);
        start[j] = 1.0 - rho * rho;
      }
    }
    // a line-search failure is reported through the converged flag; the
    // partial result is still returned
    *out = new skyrme_minimize_result{
        skyrme::variational::minimize_J(start, o.max_iter, o.tol)};
  });
}

void skyrme_minimize_result_free(skyrme_minimize_result* r) { delete r; }

double skyrme_minimize_J(const skyrme_minimize_result* r) { return r->res.J_value; }
double skyrme_minimize_grad_norm(const skyrme_minimize_result* r) { return r->res.grad_norm; }
size_t skyrme_minimize_iterations(const skyrme_minimize_result* r) { return r->res.iterations; }
int skyrme_minimize_converged(const skyrme_minimize_result* r) {
  return r->res.converged ? 1 : 0;
}
int skyrme_minimize_monotone(const skyrme_minimize_result* r) {
  return skyrme::variational::is_monotone(r->res.psi) ? 1 : 0;
}
double skyrme_minimize_max_abs_psi(const skyrme_minimize_result* r) {
  double m = 0.0;
  for (double v : r->res.psi.values) m = std::max(m, std::abs(v));
  return m;
}
double skyrme_minimize_c0_estimate(const skyrme_minimize_result* r) {
  return skyrme::variational::c0_estimate(r->res.psi);
}
size_t skyrme_minimize_node_count(const skyrme_minimize_result* r) { return r->res.psi.size(); }

skyrme_status skyrme_minimize_copy_psi(const skyrme_minimize_result* r, double* rho, double* psi,
                                       size_t cap) {
  if (!r) {
    set_error("null handle");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  const size_t n = std::min(cap, r->res.psi.size());
  for (size_t j = 0; j < n; ++j) {
    if (rho) rho[j] = r->res.psi.grid->node(j);
    if (psi) psi[j] = r->res.psi[j];
  }
  return SKYRME_OK;
}

skyrme_status skyrme_minimize_write_iterates_csv(const skyrme_minimize_result* r,
                                                 const char* path) {
  if (!r || !path) {
    set_error("null argument");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] { skyrme::variational::write_iterates_csv(path, r->res); });
}

double skyrme_minimize_oracle_gap(const skyrme_minimize_result* r) {
  double sup = 0.0;
  const double sign = (r->res.psi[0] >= 0.0) ? 1.0 : -1.0;
  for (size_t j = 0; j < r->res.psi.size(); ++j) {
    const double rho = r->res.psi.grid->node(j);
    sup = std::max(sup,
                   std::abs(r->res.psi[j] - sign * skyrme::profile::rational_profile(rho)));
  }
  return sup;
}

/* ---------- phase space ---------- */

void skyrme_vector_field(const double state[3], double out[3]) {
  const auto v = skyrme::dynsys::vector_field({state[0], state[1], state[2]});
  out[0] = v[0];
  out[1] = v[1];
  out[2] = v[2];
}

void skyrme_jacobian(const double state[3], double out[9]) {
  const auto J = skyrme::dynsys::jacobian({state[0], state[1], state[2]});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[3 * i + j] = J[static_cast<size_t>(i)][static_cast<size_t>(j)];
}

skyrme_status skyrme_eigen(const double state[3], skyrme_spectral_report* out) {
  if (!out) {
    set_error("null output pointer");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] {
    const auto rep = skyrme::dynsys::eigen({state[0], state[1], state[2]});
    for (int i = 0; i < 3; ++i) {
      out->eigenvalues_re[i] = rep.eigenvalues[static_cast<size_t>(i)].real();
      out->eigenvalues_im[i] = rep.eigenvalues[static_cast<size_t>(i)].imag();
      for (int j = 0; j < 3; ++j) {
        out->eigenvectors_re[3 * i + j] =
            rep.eigenvectors[static_cast<size_t>(i)][static_cast<size_t>(j)].real();
        out->eigenvectors_im[3 * i + j] =
            rep.eigenvectors[static_cast<size_t>(i)][static_cast<size_t>(j)].imag();
      }
    }
    out->charpoly_residual = rep.charpoly_residual;
  });
}

skyrme_status skyrme_flow(const double start[3], double tau_end, double h,
                          skyrme_trajectory** out) {
  if (!out) {
    set_error("null output pointer");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] {
    *out = new skyrme_trajectory{
        skyrme::dynsys::flow({start[0], start[1], start[2]}, tau_end, h)};
  });
}

skyrme_status skyrme_flow_to_rho(const double start[3], double rho_target, double h,
                                 skyrme_trajectory** out) {
  if (!out) {
    set_error("null output pointer");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] {
    *out = new skyrme_trajectory{
        skyrme::dynsys::flow_to_rho({start[0], start[1], start[2]}, rho_target, h)};
  });
}

void skyrme_trajectory_free(skyrme_trajectory* t) { delete t; }
size_t skyrme_trajectory_size(const skyrme_trajectory* t) { return t->traj.points.size(); }
int skyrme_trajectory_truncated(const skyrme_trajectory* t) {
  return t->traj.truncated ? 1 : 0;
}

skyrme_status skyrme_trajectory_copy(const skyrme_trajectory* t, double* tau, double* y,
                                     double* q, double* rho, size_t cap) {
  if (!t) {
    set_error("null handle");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  const size_t n = std::min(cap, t->traj.points.size());
  for (size_t k = 0; k < n; ++k) {
    if (tau) tau[k] = t->traj.tau[k];
    if (y) y[k] = t->traj.points[k].y;
    if (q) q[k] = t->traj.points[k].q;
    if (rho) rho[k] = t->traj.points[k].rho;
  }
  return SKYRME_OK;
}

skyrme_status skyrme_trajectory_write_csv(const skyrme_trajectory* t, const char* path) {
  if (!t || !path) {
    set_error("null argument");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] { skyrme::dynsys::write_trajectory_csv(path, t->traj); });
}

skyrme_status skyrme_heteroclinic_check(const skyrme_profile* p,
                                        skyrme_heteroclinic_report* out) {
  if (!p || !out) {
    set_error("null argument");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] {
    const auto rep = skyrme::dynsys::heteroclinic_check(p->sol);
    out->tangent_residual_sup = rep.tangent_residual_sup;
    out->q_tilde = rep.q_tilde;
    out->start_gap = rep.start_gap;
    out->end_gap = rep.end_gap;
  });
}

/* ---------- evolution ---------- */

void skyrme_evolution_options_init(skyrme_evolution_options* opt) {
  if (!opt) return;
  opt->n = 4096;
  opt->R = 2.0;
  opt->t_end = -0.25;
  opt->frozen_boundary = 0;
  opt->sample_interval = 0.05;
}

skyrme_status skyrme_evolution_run(const skyrme_profile* p,
                                   const skyrme_evolution_options* opt, skyrme_evolution** out) {
  if (!p || !out) {
    set_error("null argument");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  skyrme_evolution_options def;
  skyrme_evolution_options_init(&def);
  const skyrme_evolution_options& o = opt ? *opt : def;
  return wrap([&] {
    skyrme::evolution::EvolveOptions eo;
    eo.n = o.n;
    eo.R = o.R;
    eo.t_end = o.t_end;
    eo.boundary = o.frozen_boundary ? skyrme::evolution::BoundaryMode::Frozen
                                    : skyrme::evolution::BoundaryMode::SelfSimilar;
    eo.sample_interval = o.sample_interval;
    *out = new skyrme_evolution{skyrme::evolution::evolve(p->sol, eo)};
  });
}

void skyrme_evolution_free(skyrme_evolution* e) { delete e; }

size_t skyrme_evolution_sample_count(const skyrme_evolution* e) {
  return e->run.report.samples.size();
}

skyrme_status skyrme_evolution_copy_samples(const skyrme_evolution* e, double* t,
                                            double* sup_grad, double* energy,
                                            double* flux_accum, double* selfsim_err,
                                            size_t cap) {
  if (!e) {
    set_error("null handle");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  const size_t n = std::min(cap, e->run.report.samples.size());
  for (size_t k = 0; k < n; ++k) {
    const auto& d = e->run.report.samples[k];
    if (t) t[k] = d.t;
    if (sup_grad) sup_grad[k] = d.sup_grad;
    if (energy) energy[k] = d.energy;
    if (flux_accum) flux_accum[k] = d.flux_accum;
    if (selfsim_err) selfsim_err[k] = d.selfsim_err;
  }
  return SKYRME_OK;
}

double skyrme_evolution_exponent(const skyrme_evolution* e) { return e->run.report.exponent; }
double skyrme_evolution_amplitude(const skyrme_evolution* e) { return e->run.report.amplitude; }
double skyrme_evolution_final_time(const skyrme_evolution* e) { return e->run.state.t; }

skyrme_status skyrme_evolution_write_diagnostics_csv(const skyrme_evolution* e,
                                                     const char* path) {
  if (!e || !path) {
    set_error("null argument");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] { skyrme::evolution::write_diagnostics_csv(path, e->run.report); });
}

size_t skyrme_evolution_snapshot_count(const skyrme_evolution* e) {
  return e->run.snapshots.size();
}

double skyrme_evolution_snapshot_time(const skyrme_evolution* e, size_t k) {
  return e->run.snapshots.at(k).t;
}

skyrme_status skyrme_evolution_write_snapshot_csv(const skyrme_evolution* e, size_t k,
                                                  const char* path) {
  if (!e || !path) {
    set_error("null argument");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] { skyrme::evolution::write_snapshot_csv(path, e->run.snapshots.at(k)); });
}

skyrme_status skyrme_blowup_fit(const double* t, const double* sup_grad, size_t count,
                                double* exponent, double* amplitude) {
  if (!t || !sup_grad || !exponent || !amplitude) {
    set_error("null argument");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] {
    const auto [e, a] = skyrme::evolution::blowup_fit(
        std::vector<double>(t, t + count), std::vector<double>(sup_grad, sup_grad + count));
    *exponent = e;
    *amplitude = a;
  });
}

/* ---------- consistency ---------- */

skyrme_status skyrme_verify(int literal_mode, skyrme_verify_report* out) {
  if (!out) {
    set_error("null output pointer");
    return SKYRME_ERR_INVALID_ARGUMENT;
  }
  return wrap([&] {
    const auto rep = skyrme::consistency::run_verify(literal_mode != 0);
    out->ode_residual_max = rep.ode_residual_max;
    out->angle_residual_max = rep.angle_residual_max;
    out->pde_residual_max = rep.pde_residual_max;
    out->literal_min_abs = rep.literal_min_abs;
    out->ode_ok = rep.ode_ok ? 1 : 0;
    out->angle_ok = rep.angle_ok ? 1 : 0;
    out->pde_ok = rep.pde_ok ? 1 : 0;
    out->literal_rejected = rep.literal_rejected ? 1 : 0;
    out->passed = rep.passed ? 1 : 0;
  });
}

}  // extern "C"
