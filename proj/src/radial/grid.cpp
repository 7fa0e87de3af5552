#include "radial/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skyrme::radial {

RadialGrid::RadialGrid(std::size_t n, double R, GridKind kind) : R_(R), kind_(kind) {
  if (n < 8) throw std::invalid_argument("grid needs n >= 8 subintervals");
  if (!(R > 0.0)) throw std::invalid_argument("grid extent must be positive");
  h_ = R / static_cast<double>(n);
  if (kind == GridKind::InteriorOffset) {
    nodes_.resize(n);
    weights_.assign(n, h_);
    for (std::size_t j = 0; j < n; ++j) nodes_[j] = (static_cast<double>(j) + 0.5) * h_;
  } else {
    nodes_.resize(n + 1);
    weights_.assign(n + 1, h_);
    for (std::size_t j = 0; j <= n; ++j) nodes_[j] = static_cast<double>(j) * h_;
    weights_.front() = 0.5 * h_;
    weights_.back() = 0.5 * h_;
  }
}

GridPtr make_grid(std::size_t n, double R, GridKind kind) {
  return std::make_shared<const RadialGrid>(n, R, kind);
}

RadialField make_field(GridPtr grid, const std::function<double(double)>& f) {
  RadialField out{grid, std::vector<double>(grid->size())};
  for (std::size_t j = 0; j < grid->size(); ++j) out.values[j] = f(grid->node(j));
  return out;
}

RadialField zero_field(GridPtr grid) {
  return RadialField{grid, std::vector<double>(grid->size(), 0.0)};
}

double integrate(const RadialField& f, Weight w) {
  const auto& g = *f.grid;
  double sum = 0.0, comp = 0.0;  // Kahan
  for (std::size_t j = 0; j < f.size(); ++j) {
    double term = f.values[j] * g.weight(j);
    if (w == Weight::Rho2) term *= g.node(j) * g.node(j);
    double t = sum + (term - comp);
    comp = (t - sum) - (term - comp);
    sum = t;
  }
  return sum;
}

RadialField derivative(const RadialField& f) {
  const std::size_t n = f.size();
  if (n < 4) throw std::invalid_argument("derivative needs at least 4 nodes");
  const double h = f.grid->spacing();
  RadialField out{f.grid, std::vector<double>(n)};
  const auto& v = f.values;
  // one-sided stencils written over differences so constants map to 0 exactly
  out.values[0] = (3.0 * (v[1] - v[0]) - (v[2] - v[1])) / (2.0 * h);
  for (std::size_t j = 1; j + 1 < n; ++j) out.values[j] = (v[j + 1] - v[j - 1]) / (2.0 * h);
  out.values[n - 1] = (3.0 * (v[n - 1] - v[n - 2]) - (v[n - 2] - v[n - 3])) / (2.0 * h);
  return out;
}

std::vector<double> cell_rho2_volumes(const RadialGrid& g) {
  const double h = g.spacing();
  std::vector<double> vol(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    double lo, hi;
    if (g.kind() == GridKind::InteriorOffset) {
      lo = static_cast<double>(j) * h;
      hi = static_cast<double>(j + 1) * h;
    } else {
      lo = std::max(0.0, (static_cast<double>(j) - 0.5) * h);
      hi = std::min(g.extent(), (static_cast<double>(j) + 0.5) * h);
    }
    vol[j] = (hi * hi * hi - lo * lo * lo) / 3.0;
  }
  return vol;
}

namespace {

double lagrange4(const RadialField& f, std::size_t j0, double x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    double li = 1.0;
    const double xi = f.grid->node(j0 + i);
    for (std::size_t k = 0; k < 4; ++k) {
      if (k == i) continue;
      const double xk = f.grid->node(j0 + k);
      li *= (x - xk) / (xi - xk);
    }
    acc += li * f.values[j0 + i];
  }
  return acc;
}

std::size_t stencil_start(const RadialField& f, double x) {
  const auto& nodes = f.grid->nodes();
  auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
  std::size_t idx = static_cast<std::size_t>(it - nodes.begin());
  std::size_t j0 = (idx >= 2) ? idx - 2 : 0;
  if (j0 + 4 > nodes.size()) j0 = nodes.size() - 4;
  return j0;
}

}  // namespace

double interpolate(const RadialField& f, double x) {
  if (f.size() < 4) throw std::invalid_argument("interpolation needs at least 4 nodes");
  if (x < f.grid->nodes().front() || x > f.grid->nodes().back())
    throw std::domain_error("interpolation point outside grid hull");
  return lagrange4(f, stencil_start(f, x), x);
}

double extrapolate(const RadialField& f, double x) {
  if (f.size() < 4) throw std::invalid_argument("extrapolation needs at least 4 nodes");
  return lagrange4(f, stencil_start(f, x), x);
}

double h1_seminorm(const RadialField& f) {
  RadialField d = derivative(f);
  for (auto& v : d.values) v *= v;
  return std::sqrt(integrate(d, Weight::Rho2));
}

}  // namespace skyrme::radial
