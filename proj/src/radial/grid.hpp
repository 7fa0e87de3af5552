#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace skyrme::radial {

enum class GridKind {
  InteriorOffset,     // nodes at (j+1/2)h, endpoints excluded
  EndpointInclusive,  // nodes at jh, endpoints included
};

enum class Weight { Plain, Rho2 };

// Uniform grid on [0, R] with composite quadrature weights (midpoint
// for interior-offset, trapezoid for endpoint-inclusive). n counts
// subintervals; the singular integrands of this problem live on
// interior-offset grids so that rho = 0 and rho = R are never sampled.
class RadialGrid {
public:
  RadialGrid(std::size_t n, double R, GridKind kind);

  std::size_t size() const { return nodes_.size(); }
  double extent() const { return R_; }
  double spacing() const { return h_; }
  GridKind kind() const { return kind_; }
  double node(std::size_t j) const { return nodes_[j]; }
  double weight(std::size_t j) const { return weights_[j]; }
  const std::vector<double>& nodes() const { return nodes_; }

private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
  double R_;
  double h_;
  GridKind kind_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(std::size_t n, double R, GridKind kind);

// Real samples on a shared grid; values are immutable by convention
// once a field has been handed off.
struct RadialField {
  GridPtr grid;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t j) const { return values[j]; }
  double& operator[](std::size_t j) { return values[j]; }
};

RadialField make_field(GridPtr grid, const std::function<double(double)>& f);
RadialField zero_field(GridPtr grid);

// Composite quadrature of f drho (Plain) or f rho^2 drho (Rho2),
// compensated summation so fine grids do not lose digits.
double integrate(const RadialField& f, Weight w);

// Second-order finite differences, one-sided at both ends.
RadialField derivative(const RadialField& f);

// Local 4-point (cubic) Lagrange interpolation; x must lie in the node hull.
double interpolate(const RadialField& f, double x);

// Cubic extrapolation through the nearest four nodes; for boundary
// values just outside the hull of an interior-offset grid.
double extrapolate(const RadialField& f, double x);

// (integral of f_rho^2 rho^2 drho)^(1/2)
double h1_seminorm(const RadialField& f);

// Exact integral of rho^2 over each node's cell. Finite-volume forms of
// the radial Laplacian must divide by these: the midpoint value rho_j^2 h
// is off by a factor 4/3 on the first interior-offset cell.
std::vector<double> cell_rho2_volumes(const RadialGrid& g);

}  // namespace skyrme::radial
