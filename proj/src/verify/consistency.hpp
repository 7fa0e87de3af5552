#pragma once

namespace skyrme::consistency {

// Substitution checks tying the three formulations together: the
// profile ODE, its angle form, and the cosine-form wave equation. All
// residuals are evaluated from analytic derivatives of the closed-form
// profile, so a pass means the algebra holds to rounding.

// Residual of the angle equation at w = arccos(y(rho)).
double angle_residual(double rho);

// Residual (times t^2) of u = w(-r/t) in the equation read literally
// with a +(2/r) d_r wave operator and a (u_t^2 - u_r^2) kinetic factor.
// O(1) away from zero: the literal reading is not self-similar-consistent.
double literal_sign_residual(double rho);

struct VerifyReport {
  double ode_residual_max = 0.0;      // closed form into the profile ODE
  double angle_residual_max = 0.0;    // arccos into the angle ODE
  double pde_residual_max = 0.0;      // self-similar field into the wave equation
  double literal_min_abs = 0.0;       // negative control, should stay O(1)
  bool ode_ok = false;
  bool angle_ok = false;
  bool pde_ok = false;
  bool literal_rejected = false;  // true when the control fails as expected
  bool passed = false;
};

// Thresholds: 1e-12 for the two rational-form residuals, 1e-10 for the
// angle form (square roots enter), and the control must exceed 0.5.
VerifyReport run_verify(bool literal_mode = false);

}  // namespace skyrme::consistency
