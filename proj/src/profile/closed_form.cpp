#include "profile/closed_form.hpp"

#include <stdexcept>

namespace skyrme::profile {

double rational_profile(double rho) {
  const double r2 = rho * rho;
  return 5.0 * (1.0 - r2) / (5.0 + 3.0 * r2);
}

double rational_profile_deriv(double rho) {
  const double P = 5.0 + 3.0 * rho * rho;
  return -80.0 * rho / (P * P);
}

double rational_profile_second_deriv(double rho) {
  const double P = 5.0 + 3.0 * rho * rho;
  return -80.0 * (5.0 - 9.0 * rho * rho) / (P * P * P);
}

double closed_form(double rho) {
  if (rho < 0.0 || rho > 1.0) throw std::domain_error("closed_form: rho outside [0,1]");
  return rational_profile(rho);
}

double ode_residual(double y, double dy, double d2y, double rho) {
  if (!(rho > 0.0) || !(rho < 1.0))
    throw std::domain_error("ode_residual: rho must lie strictly inside (0,1)");
  const double one_minus_r2 = (1.0 - rho) * (1.0 + rho);
  const double one_minus_y2 = (1.0 - y) * (1.0 + y);
  return d2y + 2.0 / rho * dy + 3.0 * y * one_minus_y2 / (rho * rho * one_minus_r2);
}

double closed_form_residual(double rho) {
  if (!(rho > 0.0) || !(rho < 1.0))
    throw std::domain_error("closed_form_residual: rho must lie strictly inside (0,1)");
  const double r2 = rho * rho;
  const double P = 5.0 + 3.0 * r2;
  const double P3 = P * P * P;
  const double d2y = -80.0 * (5.0 - 9.0 * r2) / P3;
  const double two_over_rho_dy = -160.0 / (P * P);
  const double nonlinear = 240.0 * (5.0 - r2) / P3;
  return d2y + two_over_rho_dy + nonlinear;
}

double selfsimilar_pde_residual(double rho) {
  if (!(rho > 0.0)) throw std::domain_error("selfsimilar_pde_residual: rho must be positive");
  const double r2 = rho * rho;
  const double P = 5.0 + 3.0 * r2;
  const double P3 = P * P * P;
  const double one_minus_r2 = (1.0 - rho) * (1.0 + rho);
  const double d2y = -80.0 * (5.0 - 9.0 * r2) / P3;
  const double two_over_rho_dy = -160.0 / (P * P);
  const double nonlinear = 240.0 * (5.0 - r2) / P3;  // 3y(1-y^2)/(rho^2(1-rho^2))
  return one_minus_r2 * (d2y + two_over_rho_dy + nonlinear);
}

}  // namespace skyrme::profile
