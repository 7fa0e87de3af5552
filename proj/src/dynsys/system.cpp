#include "dynsys/system.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "io/format.hpp"
#include "radial/grid.hpp"

namespace skyrme::dynsys {

namespace {

constexpr double kBlowupNorm = 1e3;

inline std::array<double, 3> field_raw(double y, double q, double rho) {
  const double om = 1.0 - rho * rho;
  return {om * q, -om * q - 3.0 * y * (1.0 - y * y), rho * om};
}

inline double norm3(const std::array<double, 3>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

}  // namespace

std::array<double, 3> vector_field(const PhasePoint& p) { return field_raw(p.y, p.q, p.rho); }

std::array<std::array<double, 3>, 3> jacobian(const PhasePoint& p) {
  const double om = 1.0 - p.rho * p.rho;
  return {{{0.0, om, -2.0 * p.rho * p.q},
           {-3.0 + 9.0 * p.y * p.y, -om, 2.0 * p.rho * p.q},
           {0.0, 0.0, 1.0 - 3.0 * p.rho * p.rho}}};
}

EquilibriaSet equilibria() {
  EquilibriaSet s;
  s.isolated = {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}};
  s.families = {{1.0, 1.0}, {-1.0, 1.0}, {0.0, 1.0}};
  return s;
}

SpectralReport eigen(const PhasePoint& p) {
  if (norm3(vector_field(p)) > 1e-12)
    throw std::invalid_argument("eigen: point is not an equilibrium");

  SpectralReport rep;
  rep.point = p;
  rep.jac = jacobian(p);

  using cplx = std::complex<double>;
  // (y,q) block [[0, A], [B, C]] with the rho direction decoupled at q = 0
  const double A = 1.0 - p.rho * p.rho;
  const double B = -3.0 + 9.0 * p.y * p.y;
  const double C = -(1.0 - p.rho * p.rho);
  const double lam3 = 1.0 - 3.0 * p.rho * p.rho;

  const cplx disc = std::sqrt(cplx(C * C + 4.0 * A * B, 0.0));
  const cplx l1 = 0.5 * (cplx(C, 0.0) + disc);
  const cplx l2 = 0.5 * (cplx(C, 0.0) - disc);
  rep.eigenvalues = {l1, l2, cplx(lam3, 0.0)};

  auto block_vector = [&](cplx lam) -> std::array<cplx, 3> {
    if (std::abs(A) > 1e-14) return {cplx(A, 0.0), lam, 0.0};
    if (std::abs(lam) > 1e-14) return {0.0, 1.0, 0.0};       // [[0,0],[B,C]], lam = C
    if (std::abs(B) > 1e-14) return {cplx(C, 0.0) / cplx(-B, 0.0), 1.0, 0.0};
    return {1.0, 0.0, 0.0};
  };
  rep.eigenvectors[0] = block_vector(l1);
  rep.eigenvectors[1] = block_vector(l2);

  // third direction: solve (M2 - lam3 I) w = -(top of column 3)
  {
    const double c1 = -rep.jac[0][2];
    const double c2 = -rep.jac[1][2];
    const double m00 = -lam3, m01 = A, m10 = B, m11 = C - lam3;
    const double det = m00 * m11 - m01 * m10;
    if (std::abs(det) > 1e-12) {
      rep.eigenvectors[2] = {cplx((c1 * m11 - m01 * c2) / det, 0.0),
                             cplx((m00 * c2 - c1 * m10) / det, 0.0), cplx(1.0, 0.0)};
    } else {
      rep.eigenvectors[2] = {0.0, 0.0, 1.0};
    }
  }

  // characteristic polynomial certificate
  const auto& J = rep.jac;
  const double tr = J[0][0] + J[1][1] + J[2][2];
  const double m2 = J[0][0] * J[1][1] - J[0][1] * J[1][0] + J[0][0] * J[2][2] -
                    J[0][2] * J[2][0] + J[1][1] * J[2][2] - J[1][2] * J[2][1];
  const double det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                     J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                     J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
  double worst = 0.0;
  for (const cplx& lam : rep.eigenvalues) {
    const cplx val = -lam * lam * lam + tr * lam * lam - m2 * lam + det;
    worst = std::max(worst, std::abs(val));
  }
  rep.charpoly_residual = worst;
  return rep;
}

namespace {

inline void rk4(PhasePoint& p, double h) {
  const auto k1 = field_raw(p.y, p.q, p.rho);
  const auto k2 = field_raw(p.y + 0.5 * h * k1[0], p.q + 0.5 * h * k1[1], p.rho + 0.5 * h * k1[2]);
  const auto k3 = field_raw(p.y + 0.5 * h * k2[0], p.q + 0.5 * h * k2[1], p.rho + 0.5 * h * k2[2]);
  const auto k4 = field_raw(p.y + h * k3[0], p.q + h * k3[1], p.rho + h * k3[2]);
  p.y += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
  p.q += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
  p.rho += h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]);
}

inline bool blown(const PhasePoint& p) {
  return std::sqrt(p.y * p.y + p.q * p.q + p.rho * p.rho) > kBlowupNorm;
}

}  // namespace

Trajectory flow(const PhasePoint& start, double tau_end, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("flow: step must be positive");
  Trajectory t;
  PhasePoint p = start;
  const std::size_t nstep = static_cast<std::size_t>(std::ceil(std::abs(tau_end) / h));
  const double hh = tau_end / static_cast<double>(nstep);
  t.tau.push_back(0.0);
  t.points.push_back(p);
  for (std::size_t k = 0; k < nstep; ++k) {
    rk4(p, hh);
    t.tau.push_back(static_cast<double>(k + 1) * hh);
    t.points.push_back(p);
    if (blown(p)) {
      t.truncated = true;
      break;
    }
  }
  return t;
}

Trajectory flow_to_rho(const PhasePoint& start, double rho_target, double h,
                       std::size_t max_steps) {
  if (!(h > 0.0)) throw std::invalid_argument("flow_to_rho: step must be positive");
  Trajectory t;
  PhasePoint p = start;
  t.tau.push_back(0.0);
  t.points.push_back(p);
  for (std::size_t k = 0; k < max_steps && p.rho < rho_target; ++k) {
    rk4(p, h);
    t.tau.push_back(static_cast<double>(k + 1) * h);
    t.points.push_back(p);
    if (blown(p)) {
      t.truncated = true;
      break;
    }
  }
  return t;
}

double y_at_rho(const Trajectory& t, double rho) {
  for (std::size_t k = 1; k < t.points.size(); ++k) {
    if (t.points[k].rho >= rho) {
      const auto& a = t.points[k - 1];
      const auto& b = t.points[k];
      const double lam = (rho - a.rho) / (b.rho - a.rho);
      return a.y + lam * (b.y - a.y);
    }
  }
  throw std::domain_error("y_at_rho: trajectory never reaches the requested rho");
}

HeteroclinicReport heteroclinic_check(const profile::ProfileSolution& p, double margin) {
  const auto& grid = *p.y.grid;
  const std::size_t n = grid.size();

  radial::RadialField q = radial::zero_field(p.y.grid);
  for (std::size_t j = 0; j < n; ++j) q[j] = grid.node(j) * p.dy[j];
  const radial::RadialField dq = radial::derivative(q);

  HeteroclinicReport rep;
  double sup = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double rho = grid.node(j);
    if (rho < margin || rho > 1.0 - margin) continue;
    const double om = (1.0 - rho) * (1.0 + rho);
    // dq/drho from the field vs the autonomous system, both per unit rho
    const double lhs = dq[j];
    const double rhs =
        (-om * q[j] - 3.0 * p.y[j] * (1.0 - p.y[j] * p.y[j])) / (rho * om);
    sup = std::max(sup, std::abs(lhs - rhs));
  }
  rep.tangent_residual_sup = sup;
  rep.q_tilde = radial::extrapolate(q, 1.0);
  const double y0 = p.y[0] - static_cast<double>(p.branch);
  rep.start_gap = std::sqrt(y0 * y0 + q[0] * q[0]);
  rep.end_gap = std::abs(p.y[n - 1]);
  return rep;
}

void write_trajectory_csv(const std::string& path, const Trajectory& t) {
  io::CsvWriter csv(path, {"tau", "y", "q", "rho"});
  for (std::size_t k = 0; k < t.points.size(); ++k)
    csv.row({t.tau[k], t.points[k].y, t.points[k].q, t.points[k].rho});
}

}  // namespace skyrme::dynsys
