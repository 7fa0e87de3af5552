#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "profile/shooting.hpp"
#include "radial/grid.hpp"

namespace skyrme::evolution {

// The evolution runs on v = cos u, which turns the equation of motion
// into the polynomial semilinear wave equation
//   v_tt = v_rr + (2/r) v_r + 3 v (1-v^2) / r^2.
// Inside the backward cone r <= -t the solution is pinned to the
// profile, so |v| <= 1 there; outside the cone the continuation
// legitimately leaves [-1,1] and the angle u is no longer defined.

struct instability_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class BoundaryMode {
  SelfSimilar,  // outer value follows the profile continuation (default)
  Frozen,       // outer value held at its initial value
};

struct EvolutionState {
  double t = -1.0;
  radial::RadialField v;
  radial::RadialField vt;
  double boundary_value = 0.0;  // Dirichlet value at r = R
  BoundaryMode boundary = BoundaryMode::SelfSimilar;
};

// Cauchy data at t = -1: v = profile (continued past r = 1 by the
// closed form), vt = r dv/dr. Rejects R >= sqrt(5), where the
// continuation would leave |v| <= 1 at the initial slice.
EvolutionState make_initial_data(const profile::ProfileSolution& p, radial::GridPtr grid);

// Acceleration field v_tt. Signals instability if |v| leaves 1+1e-3
// inside the backward cone.
radial::RadialField pde_rhs(const EvolutionState& s);

// One classical RK4 step; the boundary value advances through the same
// stages from its analytic rate. dt must respect dt <= 0.5 h.
EvolutionState step(const EvolutionState& s, double dt);

// Face-based quadrature of
//   int [vt^2/2 + v_r^2/2] r^2 dr + int (3/4)(1-v^2)^2 dr,
// whose semi-discrete time derivative equals the boundary flux
// R^2 vt(R) v_r(R).
double energy(const EvolutionState& s);

// Analytic boundary rates for the two modes.
double boundary_rate(double t, double R, BoundaryMode mode);

struct DiagnosticSample {
  double t;
  double sup_grad;     // sup of |v_r| over r <= -t
  double energy;
  double flux_accum;   // accumulated boundary flux since t = -1
  double selfsim_err;  // sup over the cone of |v - y(-r/t)|
};

struct BlowupReport {
  std::vector<DiagnosticSample> samples;
  double exponent = 0.0;
  double amplitude = 0.0;
};

struct EvolveOptions {
  std::size_t n = 4096;
  double R = 2.0;
  double t_end = -0.25;
  BoundaryMode boundary = BoundaryMode::SelfSimilar;
  double sample_interval = 0.05;
  std::vector<double> snapshot_times = {-0.5, -0.25};
};

struct EvolveResult {
  EvolutionState state;  // at the stop time
  BlowupReport report;
  std::vector<EvolutionState> snapshots;
};

// March from t = -1 to t_end (or until |t| < 10h), sampling diagnostics
// every sample_interval and fitting the gradient growth law over the
// samples with t in [-0.5, -0.05].
EvolveResult evolve(const profile::ProfileSolution& p, const EvolveOptions& opt = {});

// Least-squares fit of log(sup_grad) against log|t|; returns
// {exponent, amplitude}. Rejects non-positive sup_grad samples.
std::pair<double, double> blowup_fit(const std::vector<double>& t,
                                     const std::vector<double>& sup_grad);

// u = arccos(v), clamped; clamping beyond 1e-3 inside the cone signals
// instability.
radial::RadialField recover_u(const EvolutionState& s);

void write_diagnostics_csv(const std::string& path, const BlowupReport& r);
void write_snapshot_csv(const std::string& path, const EvolutionState& s);

}  // namespace skyrme::evolution
