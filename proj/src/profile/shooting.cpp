#include "profile/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "io/format.hpp"
#include "profile/closed_form.hpp"

namespace skyrme::profile {

namespace {

constexpr double kOriginStepFraction = 0.02;  // graded steps: h_loc <= rho/50
constexpr double kDivergenceBound = 10.0;

// RHS of the shifted equation z = y - 1:
//   z'' + (2/rho) z' - 3 z (1+z)(2+z) / (rho^2 (1-rho^2)) = 0
inline void rhs(double rho, double z, double dz, double& fz, double& fdz) {
  const double om = (1.0 - rho) * (1.0 + rho);
  fz = dz;
  fdz = -2.0 / rho * dz + 3.0 * z * (1.0 + z) * (2.0 + z) / (rho * rho * om);
}

inline void rk4_step(double rho, double hh, double& z, double& dz) {
  double k1z, k1d, k2z, k2d, k3z, k3d, k4z, k4d;
  rhs(rho, z, dz, k1z, k1d);
  rhs(rho + 0.5 * hh, z + 0.5 * hh * k1z, dz + 0.5 * hh * k1d, k2z, k2d);
  rhs(rho + 0.5 * hh, z + 0.5 * hh * k2z, dz + 0.5 * hh * k2d, k3z, k3d);
  rhs(rho + hh, z + hh * k3z, dz + hh * k3d, k4z, k4d);
  z += hh / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
  dz += hh / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
}

double poly_eval(const std::vector<double>& coeff, double x) {
  double acc = 0.0;
  for (std::size_t i = coeff.size(); i-- > 0;) acc = acc * x + coeff[i];
  return acc;
}

double poly_eval_deriv(const std::vector<double>& coeff, double x) {
  double acc = 0.0;
  for (std::size_t i = coeff.size(); i-- > 1;) acc = acc * x + static_cast<double>(i) * coeff[i];
  return acc;
}

// 4-point Lagrange on a sorted but not necessarily uniform abscissa set.
double lagrange4_at(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  std::size_t idx = static_cast<std::size_t>(it - xs.begin());
  std::size_t j0 = (idx >= 2) ? idx - 2 : 0;
  if (j0 + 4 > xs.size()) j0 = xs.size() - 4;
  double acc = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    double li = 1.0;
    for (std::size_t k = 0; k < 4; ++k) {
      if (k == i) continue;
      li *= (x - xs[j0 + k]) / (xs[j0 + i] - xs[j0 + k]);
    }
    acc += li * ys[j0 + i];
  }
  return acc;
}

}  // namespace

std::vector<double> series_at_zero(double c, int order, int branch) {
  if (order < 2 || order > 8) throw std::invalid_argument("series order must lie in [2, 8]");
  if (branch != 1 && branch != -1) throw std::invalid_argument("branch must be +1 or -1");
  const int K = order / 2;
  // a[k] multiplies rho^{2k}
  std::vector<double> a(static_cast<std::size_t>(K) + 1, 0.0);
  a[0] = static_cast<double>(branch);
  a[1] = c;
  for (int k = 2; k <= K; ++k) {
    const int m = 2 * k;
    // coefficient of rho^m in y^3 from terms of degree < m (a[k] is still 0)
    double cube_m = 0.0;
    for (int i = 0; i <= k; ++i)
      for (int j = 0; i + j <= k; ++j) cube_m += a[i] * a[j] * a[k - i - j];
    a[k] = ((m - 2) * (m - 1) * a[k - 1] + 3.0 * cube_m) / static_cast<double>((m - 2) * (m + 3));
  }
  std::vector<double> coeff(static_cast<std::size_t>(order) + 1, 0.0);
  for (int k = 0; k <= K; ++k) coeff[static_cast<std::size_t>(2 * k)] = a[k];
  return coeff;
}

ShotResult shoot(double c, double eps, double h) {
  if (!(eps > 0.0) || eps > 1e-3) throw std::invalid_argument("shoot: eps must lie in (0, 1e-3]");
  if (!(h > 0.0) || h > 1e-3) throw std::invalid_argument("shoot: h must lie in (0, 1e-3]");

  const std::vector<double> coeff = series_at_zero(c, 6, +1);
  std::vector<double> shifted(coeff);
  shifted[0] = 0.0;  // z = y - 1

  ShotResult out;
  double rho = eps;
  double z = poly_eval(shifted, eps);
  double dz = poly_eval_deriv(shifted, eps);
  const double r1 = 1.0 - eps;
  out.rho.push_back(rho);
  out.y.push_back(1.0 + z);
  out.dy.push_back(dz);

  // Regular-branch mismatch at rho = 1. The branch through y(1) = 0
  // behaves like y = a s + (a/4) s^2 in s = 1 - rho (the quadratic
  // coefficient is forced by the equation), so the slope estimate is
  // corrected for curvature; the first-order test would leave an eps^2
  // floor in the root that the rho = 1 singularity amplifies.
  auto branch_miss = [eps](double y_end, double dy_end) {
    const double a = -dy_end / (1.0 + 0.5 * eps);
    return y_end - a * eps * (1.0 + 0.25 * eps);
  };

  auto record = [&](double r, double zz, double dd) {
    out.rho.push_back(r);
    out.y.push_back(1.0 + zz);
    out.dy.push_back(dd);
  };
  auto blown = [&] { return std::abs(1.0 + z) > kDivergenceBound; };

  // Steps are graded toward both singular endpoints (never longer than
  // a fixed fraction of the distance to rho = 0 or rho = 1) and capped
  // at h in between; the march lands exactly on 1 - eps.
  while (rho < r1 - 1e-15) {
    double hh = std::min(h, kOriginStepFraction * std::min(rho, 1.0 - rho));
    hh = std::min(hh, r1 - rho);
    rk4_step(rho, hh, z, dz);
    rho += hh;
    record(rho, z, dz);
    if (blown()) {
      out.diverged = true;
      out.miss = branch_miss(1.0 + z, dz);
      return out;
    }
  }
  out.miss = branch_miss(1.0 + z, dz);
  return out;
}

ProfileSolution solve_profile(double tol, std::size_t n, double eps, double h) {
  if (tol < 1e-12) throw std::invalid_argument("solve_profile: tol below 1e-12");

  // coarse bracket scan over the shooting parameter
  constexpr double kLo = -4.0, kHi = -0.1;
  constexpr int kScan = 40;
  double lo = 0.0, hi = 0.0, flo = 0.0, fhi = 0.0;
  bool found = false;
  double prev_c = kLo, prev_f = shoot(kLo, eps, h).miss;
  for (int k = 1; k < kScan; ++k) {
    const double c = kLo + (kHi - kLo) * static_cast<double>(k) / (kScan - 1);
    const double f = shoot(c, eps, h).miss;
    if ((prev_f < 0.0) != (f < 0.0)) {
      lo = prev_c;
      flo = prev_f;
      hi = c;
      fhi = f;
      found = true;
      break;
    }
    prev_c = c;
    prev_f = f;
  }
  if (!found) throw bracket_error("solve_profile: no sign change of miss(c) in [-4, -0.1]");

  // bisection with a secant candidate when it stays inside the bracket
  double c_root = 0.5 * (lo + hi);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    double cand = 0.5 * (lo + hi);
    if (fhi != flo) {
      const double sec = hi - fhi * (hi - lo) / (fhi - flo);
      if (sec > lo + 0.1 * (hi - lo) && sec < hi - 0.1 * (hi - lo)) cand = sec;
    }
    const double f = shoot(cand, eps, h).miss;
    if ((f < 0.0) == (flo < 0.0)) {
      lo = cand;
      flo = f;
    } else {
      hi = cand;
      fhi = f;
    }
    c_root = 0.5 * (lo + hi);
  }

  const ShotResult best = shoot(c_root, eps, h);

  ProfileSolution p;
  p.c_shoot = c_root;
  p.branch = +1;
  p.eps = eps;
  p.step = h;
  auto grid = radial::make_grid(n, 1.0, radial::GridKind::InteriorOffset);
  p.y = radial::zero_field(grid);
  p.dy = radial::zero_field(grid);
  for (std::size_t j = 0; j < grid->size(); ++j) {
    const double x = grid->node(j);
    p.y[j] = lagrange4_at(best.rho, best.y, x);
    p.dy[j] = lagrange4_at(best.rho, best.dy, x);
  }
  radial::RadialField res = grid_residual(p);
  double sup = 0.0;
  for (double v : res.values) sup = std::max(sup, std::abs(v));
  p.residual_sup = sup;
  return p;
}

ProfileSolution negate(const ProfileSolution& p) {
  ProfileSolution q = p;
  for (auto& v : q.y.values) v = -v;
  for (auto& v : q.dy.values) v = -v;
  q.c_shoot = -p.c_shoot;
  q.branch = -p.branch;
  return q;
}

AngleProfile to_angle(const ProfileSolution& p) {
  const std::size_t n = p.y.size();
  for (std::size_t j = 0; j < n; ++j)
    if (std::abs(p.y[j]) > 1.0 + 1e-10)
      throw std::domain_error("to_angle: |y| exceeds 1 + 1e-10");

  AngleProfile a{radial::zero_field(p.y.grid), radial::zero_field(p.y.grid)};
  const double slope0 = std::sqrt(2.0 * std::abs(p.c_shoot));
  for (std::size_t j = 0; j < n; ++j) {
    const double y = std::clamp(p.y[j], -1.0, 1.0);
    a.w[j] = std::acos(y);
    const double s2 = (1.0 - y) * (1.0 + y);
    if (s2 < 1e-12) {
      a.dw[j] = (p.branch > 0) ? slope0 : -slope0;
    } else {
      a.dw[j] = -p.dy[j] / std::sqrt(s2);
    }
  }
  return a;
}

double angle_residual_sup(const AngleProfile& a, double margin) {
  const radial::RadialField d2w = radial::derivative(a.dw);
  const auto& g = *a.w.grid;
  double sup = 0.0;
  for (std::size_t j = 1; j + 1 < g.size(); ++j) {
    const double rho = g.node(j);
    if (rho < margin) continue;
    const double w = a.w[j];
    const double s = std::sin(w);
    const double om = (1.0 - rho) * (1.0 + rho);
    const double bracket = 3.0 * s * s / (rho * rho * om) - a.dw[j] * a.dw[j];
    const double r = d2w[j] + 2.0 / rho * a.dw[j] - bracket * (std::cos(w) / s);
    sup = std::max(sup, std::abs(r));
  }
  return sup;
}

radial::RadialField grid_residual(const ProfileSolution& p) {
  const radial::RadialField d2y = radial::derivative(p.dy);
  radial::RadialField out = radial::zero_field(p.y.grid);
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = ode_residual(p.y[j], p.dy[j], d2y[j], p.y.grid->node(j));
  return out;
}

double max_closed_form_gap(const ProfileSolution& p) {
  double sup = 0.0;
  const double sign = (p.branch > 0) ? 1.0 : -1.0;
  for (std::size_t j = 0; j < p.y.size(); ++j)
    sup = std::max(sup, std::abs(p.y[j] - sign * rational_profile(p.y.grid->node(j))));
  return sup;
}

void write_profile_csv(const std::string& path, const ProfileSolution& p) {
  const AngleProfile a = to_angle(p);
  const radial::RadialField res = grid_residual(p);
  io::CsvWriter csv(path, {"rho", "y", "dy", "w", "dw", "residual"});
  for (std::size_t j = 0; j < p.y.size(); ++j)
    csv.row({p.y.grid->node(j), p.y[j], p.dy[j], a.w[j], a.dw[j], res[j]});
}

}  // namespace skyrme::profile
