#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "radial/grid.hpp"

namespace skyrme::profile {

// miss(c) found no sign change over the scan window
struct bracket_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Even power-series coefficients of the profile near rho = 0,
// y = branch + c rho^2 + a4 rho^4 + ..., with the higher coefficients
// fixed recursively by the equation. Returns coefficients of rho^0..rho^order
// (odd slots zero). order must lie in [2, 8]; branch is +1 or -1.
std::vector<double> series_at_zero(double c, int order, int branch);

struct ShotResult {
  std::vector<double> rho;  // sample abscissae, eps .. 1-eps
  std::vector<double> y;
  std::vector<double> dy;
  double miss = 0.0;   // regular-branch mismatch at rho = 1; ~0 at the profile
  bool diverged = false;
};

// Integrate the + branch outward from the series start at rho = eps to
// rho = 1 - eps with classical RK4 on the shifted variable z = y - 1.
// Steps are graded near the origin (capped at rho/50) and uniform h after.
ShotResult shoot(double c, double eps = 1e-4, double h = 1e-4);

struct ProfileSolution {
  radial::RadialField y;
  radial::RadialField dy;
  double c_shoot = 0.0;
  int branch = +1;
  double residual_sup = 0.0;  // finite-difference certificate on the grid
  double eps = 0.0;
  double step = 0.0;
};

// Bracket and root-find the shooting parameter in [-4, -0.1], then
// sample the winning trajectory onto an interior-offset grid of [0,1].
ProfileSolution solve_profile(double tol = 1e-10, std::size_t n = 4096, double eps = 1e-4,
                              double h = 1e-4);

// Mirror a solution to the other branch (the equation is odd in y).
ProfileSolution negate(const ProfileSolution& p);

struct AngleProfile {
  radial::RadialField w;
  radial::RadialField dw;
};

// w = arccos(y), dw = -dy / sqrt(1-y^2) with a series-based value where
// 1-y^2 drops below 1e-12. Rejects |y| > 1 + 1e-10.
AngleProfile to_angle(const ProfileSolution& p);

// Residual of the angle equation
//   w'' + (2/rho) w' - [3 sin^2 w / (rho^2(1-rho^2)) - w'^2] cot w = 0
// at interior nodes with rho >= margin, w'' from finite differences of
// dw. The cot factor scales data noise by 1/rho^2, so fine grids need a
// small margin for the 100 h^2 certificate to be meaningful.
double angle_residual_sup(const AngleProfile& a, double margin = 0.0);

// Finite-difference residual of the y equation per node (one-sided
// second differences of dy at the ends).
radial::RadialField grid_residual(const ProfileSolution& p);

double max_closed_form_gap(const ProfileSolution& p);

// rho,y,dy,w,dw,residual at 17 significant digits, one row per node.
void write_profile_csv(const std::string& path, const ProfileSolution& p);

}  // namespace skyrme::profile
