#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "radial/grid.hpp"
#include "variational/potential.hpp"

namespace skyrme::variational {

// All operations below expect fields on an interior-offset grid of [0,1].
// The psi(1) = 0 boundary row is imposed through one ghost value
// (linear reflection through zero at rho = 1); gradients are staggered
// at cell faces so that gradient_J is the exact discrete derivative of
// evaluate_J in the L^2(rho^2 drho) inner product.

// J[psi] = 1/2 int [ psi_rho^2 + F(psi)/(rho^2(1-rho^2)) ] rho^2 drho
double evaluate_J(const radial::RadialField& psi, const Potential& pot = {});

// -(1/rho^2)(rho^2 psi_rho)_rho + F'(psi) / (2 rho^2 (1-rho^2))
radial::RadialField gradient_J(const radial::RadialField& psi, const Potential& pot = {});

// sqrt( sum f_j^2 rho_j^2 h )
double norm_rho2(const radial::RadialField& f);

// Exact second directional derivative of the discrete J:
//   E(eta) + 1/2 int F''(ybar) eta^2 / (1-rho^2) drho
double second_variation(const radial::RadialField& ybar, const radial::RadialField& eta,
                        const Potential& pot = {});

// int eta_rho^2 rho^2 drho / int eta^2/(rho^2(1-rho^2)) rho^2 drho
double hardy_quotient(const radial::RadialField& eta);

// |J(u)-J(v)| / ||u-v||_{H^1(rho^2 drho)}
double lipschitz_probe(const radial::RadialField& u, const radial::RadialField& v,
                       const Potential& pot = {});

bool is_monotone(const radial::RadialField& f);

// Monotonizing correctors: sub-zero dips are flattened at their entry
// level; an overshoot with peak below 1 is removed by reflecting the
// leading segment and flattening up to the peak; a peak at or above 1
// is clamped to 1 from the origin. Monotone input comes back unchanged;
// on the canonical shapes each construction strictly lowers J.
radial::RadialField monotonize(const radial::RadialField& psi);

struct MinimizeResult {
  radial::RadialField psi;
  double J_value = 0.0;
  std::size_t iterations = 0;
  double grad_norm = 0.0;
  bool converged = false;
  bool line_search_failed = false;
  bool stalled = false;  // accepted step no longer changes the iterate in fp
  // sparse (iteration, J, grad_norm) trace for the iterate CSV
  std::vector<std::array<double, 3>> history;
};

// Gradient descent with Armijo backtracking (halving, c1 = 1e-4); the
// trial step doubles after every accepted iteration.
MinimizeResult minimize_J(const radial::RadialField& init, std::size_t max_iter, double tol,
                          const Potential& pot = {});

// rho^2-coefficient of the field near the origin (3-node fit in rho^2).
double c0_estimate(const radial::RadialField& f);

void write_iterates_csv(const std::string& path, const MinimizeResult& r);

}  // namespace skyrme::variational
