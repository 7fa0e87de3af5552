#include "variational/functional.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "io/format.hpp"

namespace skyrme::variational {

namespace {

void require_unit_offset_grid(const radial::RadialField& f) {
  if (f.grid->kind() != radial::GridKind::InteriorOffset || f.grid->extent() != 1.0)
    throw std::invalid_argument("field must live on an interior-offset grid of [0,1]");
}

// face energy: int psi_rho^2 rho^2 drho with staggered differences and
// the ghost row closing psi(1) = 0
double face_energy(const std::vector<double>& v, double h) {
  const std::size_t n = v.size();
  double acc = 0.0;
  for (std::size_t f = 1; f < n; ++f) {
    const double d = (v[f] - v[f - 1]) / h;
    const double rf = static_cast<double>(f) * h;
    acc += d * d * rf * rf * h;
  }
  const double db = -2.0 * v[n - 1] / h;
  acc += db * db * 0.5 * h;  // half cell at rho = 1, weight rho^2 = 1
  return acc;
}

}  // namespace

double evaluate_J(const radial::RadialField& psi, const Potential& pot) {
  require_unit_offset_grid(psi);
  const double h = psi.grid->spacing();
  double acc = 0.0, comp = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double rho = psi.grid->node(j);
    const double term = pot.F(psi[j]) * h / ((1.0 - rho) * (1.0 + rho));
    const double t = acc + (term - comp);
    comp = (t - acc) - (term - comp);
    acc = t;
  }
  return 0.5 * face_energy(psi.values, h) + 0.5 * acc;
}

radial::RadialField gradient_J(const radial::RadialField& psi, const Potential& pot) {
  require_unit_offset_grid(psi);
  const std::size_t n = psi.size();
  const double h = psi.grid->spacing();
  const std::vector<double> vol = radial::cell_rho2_volumes(*psi.grid);
  radial::RadialField g = radial::zero_field(psi.grid);
  for (std::size_t f = 1; f < n; ++f) {
    const double rf = static_cast<double>(f) * h;
    const double flux = (psi[f] - psi[f - 1]) / h * rf * rf;
    g[f - 1] -= flux;
    g[f] += flux;
  }
  g[n - 1] += 2.0 * psi[n - 1] / h;
  for (std::size_t j = 0; j < n; ++j) {
    const double rho = psi.grid->node(j);
    g[j] += 0.5 * pot.dF(psi[j]) * h / ((1.0 - rho) * (1.0 + rho));
    g[j] /= vol[j];
  }
  return g;
}

double norm_rho2(const radial::RadialField& f) {
  const std::vector<double> vol = radial::cell_rho2_volumes(*f.grid);
  double acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) acc += f[j] * f[j] * vol[j];
  return std::sqrt(acc);
}

double second_variation(const radial::RadialField& ybar, const radial::RadialField& eta,
                        const Potential& pot) {
  require_unit_offset_grid(ybar);
  require_unit_offset_grid(eta);
  if (ybar.size() != eta.size()) throw std::invalid_argument("field sizes differ");
  const double h = ybar.grid->spacing();
  double acc = 0.0, comp = 0.0;
  for (std::size_t j = 0; j < eta.size(); ++j) {
    const double rho = ybar.grid->node(j);
    const double term =
        0.5 * pot.d2F(ybar[j]) * eta[j] * eta[j] * h / ((1.0 - rho) * (1.0 + rho));
    const double t = acc + (term - comp);
    comp = (t - acc) - (term - comp);
    acc = t;
  }
  return face_energy(eta.values, h) + acc;
}

double hardy_quotient(const radial::RadialField& eta) {
  require_unit_offset_grid(eta);
  const double h = eta.grid->spacing();
  double den = 0.0, comp = 0.0;
  for (std::size_t j = 0; j < eta.size(); ++j) {
    const double rho = eta.grid->node(j);
    const double term = eta[j] * eta[j] * h / ((1.0 - rho) * (1.0 + rho));
    const double t = den + (term - comp);
    comp = (t - den) - (term - comp);
    den = t;
  }
  if (den == 0.0) throw std::invalid_argument("hardy_quotient: zero denominator");
  return face_energy(eta.values, h) / den;
}

double lipschitz_probe(const radial::RadialField& u, const radial::RadialField& v,
                       const Potential& pot) {
  require_unit_offset_grid(u);
  require_unit_offset_grid(v);
  if (u.size() != v.size()) throw std::invalid_argument("field sizes differ");
  radial::RadialField diff = radial::zero_field(u.grid);
  bool identical = true;
  for (std::size_t j = 0; j < u.size(); ++j) {
    diff[j] = u[j] - v[j];
    if (diff[j] != 0.0) identical = false;
  }
  if (identical) throw std::invalid_argument("lipschitz_probe: identical inputs");
  const double h = u.grid->spacing();
  const double l2 = norm_rho2(diff);
  const double norm = std::sqrt(face_energy(diff.values, h) + l2 * l2);
  return std::abs(evaluate_J(u, pot) - evaluate_J(v, pot)) / norm;
}

bool is_monotone(const radial::RadialField& f) {
  bool up = true, down = true;
  for (std::size_t j = 1; j < f.size(); ++j) {
    if (f[j] < f[j - 1]) up = false;
    if (f[j] > f[j - 1]) down = false;
  }
  return up || down;
}

namespace {

bool nondecreasing(const std::vector<double>& v) {
  for (std::size_t j = 1; j < v.size(); ++j)
    if (v[j] < v[j - 1]) return false;
  return true;
}

// case 1: flatten dips whose entry level sits below zero
void flatten_subzero_dips(std::vector<double>& v) {
  double rm = v[0];
  for (std::size_t j = 1; j < v.size(); ++j) {
    rm = std::max(rm, v[j - 1]);
    if (rm < 0.0 && v[j] < rm) v[j] = rm;
  }
}

}  // namespace

radial::RadialField monotonize(const radial::RadialField& psi) {
  if (is_monotone(psi)) return psi;
  std::vector<double> w = psi.values;
  const std::size_t n = w.size();
  int flips = 0;
  if (w[0] > 0.0) {  // orient to the -1 branch
    for (auto& x : w) x = -x;
    ++flips;
  }
  for (int pass = 0; pass < 32 && !nondecreasing(w); ++pass) {
    flatten_subzero_dips(w);
    if (nondecreasing(w)) break;
    const std::size_t d = static_cast<std::size_t>(
        std::max_element(w.begin(), w.end()) - w.begin());
    const double peak = w[d];
    if (peak <= 0.0) continue;  // only dips remained; next pass flattens them
    if (peak < 1.0) {
      // reflect [0, c), flatten [c, d] at the peak level
      std::size_t c = 0;
      for (std::size_t j = 0; j <= d; ++j)
        if (w[j] <= -peak) c = j;
      for (std::size_t j = 0; j < c; ++j) w[j] = -w[j];
      for (std::size_t j = c; j <= d; ++j) w[j] = peak;
    } else {
      // clamp to 1 through the last node at or above 1
      std::size_t c = d;
      for (std::size_t j = d; j < n; ++j)
        if (w[j] >= 1.0) c = j;
      for (std::size_t j = 0; j <= c; ++j) w[j] = 1.0;
    }
    for (auto& x : w) x = -x;  // back to the -1 orientation
    ++flips;
  }
  radial::RadialField out{psi.grid, std::move(w)};
  if (flips % 2 == 1)
    for (auto& x : out.values) x = -x;
  return out;
}

MinimizeResult minimize_J(const radial::RadialField& init, std::size_t max_iter, double tol,
                          const Potential& pot) {
  require_unit_offset_grid(init);
  const std::size_t n = init.size();
  const double h = init.grid->spacing();

  // precomputed node factors
  const std::vector<double> vol = radial::cell_rho2_volumes(*init.grid);
  std::vector<double> inv_vol(n), wpot(n), face_c(n);  // face_c[f] = rho_f^2 / h
  for (std::size_t j = 0; j < n; ++j) {
    const double rho = init.grid->node(j);
    inv_vol[j] = 1.0 / vol[j];
    wpot[j] = h / ((1.0 - rho) * (1.0 + rho));
  }
  for (std::size_t f = 1; f < n; ++f) {
    const double rf = static_cast<double>(f) * h;
    face_c[f] = rf * rf / h;
  }
  const double bdry_c = 2.0 / h;  // (2 psi / h)^2 * (h/2) = psi^2 * 2/h

  auto eval = [&](const std::vector<double>& v) {
    double e = 0.0;
    for (std::size_t f = 1; f < n; ++f) {
      const double d = v[f] - v[f - 1];
      e += d * d * face_c[f];
    }
    e += v[n - 1] * v[n - 1] * bdry_c;
    double pacc = 0.0;
    for (std::size_t j = 0; j < n; ++j) pacc += pot.F(v[j]) * wpot[j];
    return 0.5 * (e + pacc);
  };

  MinimizeResult r;
  r.psi = init;
  std::vector<double>& psi = r.psi.values;
  std::vector<double> grad(n), trial(n);
  double J = eval(psi);
  double alpha = 0.25 * h * h;
  const double c1 = 1e-4;
  const std::size_t stride = std::max<std::size_t>(1, max_iter / 2000);

  std::size_t it = 0;
  double gn = 0.0;
  for (;; ++it) {
    // gradient and its squared L^2(rho^2) norm in one pass
    double gn2 = 0.0;
    {
      double left_flux = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double right_flux =
            (j + 1 < n) ? (psi[j + 1] - psi[j]) * face_c[j + 1] : -2.0 * psi[n - 1] / h;
        double g = left_flux - right_flux;
        g += 0.5 * pot.dF(psi[j]) * wpot[j];
        g *= inv_vol[j];
        grad[j] = g;
        gn2 += g * g * vol[j];
        left_flux = right_flux;
      }
    }
    gn = std::sqrt(gn2);
    if (it % stride == 0)
      r.history.push_back({static_cast<double>(it), J, gn});
    if (gn <= tol) {
      r.converged = true;
      break;
    }
    if (it >= max_iter) break;

    alpha = std::min(alpha * 2.0, 1e6);
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      for (std::size_t j = 0; j < n; ++j) trial[j] = psi[j] - alpha * grad[j];
      const double Jt = eval(trial);
      if (Jt <= J - c1 * alpha * gn2) {
        // once the accepted step stops moving the iterate, the descent
        // has hit its floating-point fixed point
        if (Jt == J && std::equal(trial.begin(), trial.end(), psi.begin())) {
          r.stalled = true;
        } else {
          psi.swap(trial);
          J = Jt;
        }
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      r.line_search_failed = true;
      break;
    }
    if (r.stalled) break;
  }
  r.J_value = J;
  r.iterations = it;
  r.grad_norm = gn;
  if (r.history.empty() || r.history.back()[0] != static_cast<double>(it))
    r.history.push_back({static_cast<double>(it), J, gn});
  return r;
}

double c0_estimate(const radial::RadialField& f) {
  // least-squares fit of a + c x + d x^2 in x = rho^2 over rho <= 0.3;
  // averaging over many nodes keeps the estimate stable against the
  // iteration noise a pointwise fit would differentiate
  double s[5] = {0, 0, 0, 0, 0};
  double b[3] = {0, 0, 0};
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double rho = f.grid->node(j);
    if (rho > 0.3) break;
    const double x = rho * rho;
    double xp = 1.0;
    for (int k = 0; k < 5; ++k) {
      s[k] += xp;
      if (k < 3) b[k] += f[j] * xp;
      xp *= x;
    }
  }
  const double M[3][3] = {{s[0], s[1], s[2]}, {s[1], s[2], s[3]}, {s[2], s[3], s[4]}};
  // solve the 3x3 normal equations by Cramer's rule
  auto det3 = [](const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double det = det3(M);
  double Mc[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) Mc[i][j] = (j == 1) ? b[i] : M[i][j];
  return det3(Mc) / det;
}

void write_iterates_csv(const std::string& path, const MinimizeResult& r) {
  io::CsvWriter csv(path, {"iteration", "J", "grad_norm"});
  for (const auto& row : r.history) csv.row({row[0], row[1], row[2]});
}

}  // namespace skyrme::variational
