#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "profile/shooting.hpp"

namespace skyrme::dynsys {

// Phase space of the profile equation rewritten autonomously in
// (y, q, rho) with q = rho y_rho and time defined by rho' = rho(1-rho^2).
struct PhasePoint {
  double y = 0.0;
  double q = 0.0;
  double rho = 0.0;
};

std::array<double, 3> vector_field(const PhasePoint& p);

std::array<std::array<double, 3>, 3> jacobian(const PhasePoint& p);

struct EquilibriumFamily {
  double y;    // q is free
  double rho;  // always 1
};

struct EquilibriaSet {
  std::vector<PhasePoint> isolated;        // (0,0,0), (+1,0,0), (-1,0,0)
  std::vector<EquilibriumFamily> families; // (+-1, q, 1), (0, q, 1)
};

EquilibriaSet equilibria();

struct SpectralReport {
  PhasePoint point;
  std::array<std::array<double, 3>, 3> jac;
  std::array<std::complex<double>, 3> eigenvalues;
  std::array<std::array<std::complex<double>, 3>, 3> eigenvectors;
  double charpoly_residual = 0.0;  // max |p(lambda_i)|
};

// Closed-form eigensolve from the (y,q) block plus the decoupled rho
// direction. Rejects points that are not equilibria.
SpectralReport eigen(const PhasePoint& p);

struct Trajectory {
  std::vector<double> tau;
  std::vector<PhasePoint> points;
  bool truncated = false;  // state norm exceeded 1e3
};

Trajectory flow(const PhasePoint& start, double tau_end, double h);

// Integrate until rho reaches rho_target (or the step/limit budget runs out).
Trajectory flow_to_rho(const PhasePoint& start, double rho_target, double h,
                       std::size_t max_steps = 2000000);

// Linear-in-tau interpolation of y at a given rho along a trajectory
// with strictly increasing rho.
double y_at_rho(const Trajectory& t, double rho);

struct HeteroclinicReport {
  double tangent_residual_sup = 0.0;  // phase tangent vs vector field, rho in [eps, 1-eps]
  double q_tilde = 0.0;               // rho y_rho extrapolated to rho = 1
  double start_gap = 0.0;             // distance to (branch, 0, 0) at the first node
  double end_gap = 0.0;               // |y| at the last node
};

// Map a profile into phase space via (y, rho y_rho, rho) and verify the
// orbit property against the vector field.
HeteroclinicReport heteroclinic_check(const profile::ProfileSolution& p, double margin = 0.01);

void write_trajectory_csv(const std::string& path, const Trajectory& t);

}  // namespace skyrme::dynsys
