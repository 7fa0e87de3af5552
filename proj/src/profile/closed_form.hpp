#pragma once

namespace skyrme::profile {

// The self-similar profile in closed form: y(rho) = 5(1-rho^2)/(5+3rho^2).
// rational_profile and its derivatives are defined for every real rho
// (the continuation past rho = 1 seeds the wave evolution); closed_form
// is the [0,1]-restricted accessor.
double rational_profile(double rho);
double rational_profile_deriv(double rho);
double rational_profile_second_deriv(double rho);

double closed_form(double rho);  // rejects rho outside [0,1]

// Residual of y'' + (2/rho) y' + 3y(1-y^2)/(rho^2 (1-rho^2)) at a
// general sample (y, dy, d2y). The 1-y^2 and 1-rho^2 factors are kept
// factored; rho must avoid the singular endpoints 0 and 1.
double ode_residual(double y, double dy, double d2y, double rho);

// Substitution residual of the closed form, evaluated from the
// analytic derivatives with the algebraically reduced nonlinear term
// 3y(1-y^2)/(rho^2(1-rho^2)) = 240(5-rho^2)/(5+3rho^2)^3, so each of
// the three terms carries only relative rounding. Cancels to ~1e-15.
double closed_form_residual(double rho);

// t^2 times the residual of v(t,r) = y(-r/t) in the cosine-form wave
// equation v_tt = v_rr + (2/r)v_r + 3v(1-v^2)/r^2; a function of
// rho = -r/t alone, valid for any rho > 0.
double selfsimilar_pde_residual(double rho);

}  // namespace skyrme::profile
