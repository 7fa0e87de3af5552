#include <doctest.h>

#include <cmath>
#include <random>

#include "dynsys/system.hpp"
#include "profile/shooting.hpp"

using namespace skyrme::dynsys;

TEST_CASE("vector field on the invariant structures") {
  // the trivial-solution line (0, 0, rho) only moves in rho
  for (double rho : {0.1, 0.5, 0.9}) {
    const auto v = vector_field({0.0, 0.0, rho});
    CHECK(v[0] == 0.0);
    CHECK(v[1] == 0.0);
    CHECK(v[2] == doctest::Approx(rho * (1.0 - rho * rho)).epsilon(1e-15));
  }
  // isolated equilibria
  for (double y : {1.0, -1.0}) {
    const auto v = vector_field({y, 0.0, 0.0});
    CHECK(v[0] == 0.0);
    CHECK(v[1] == 0.0);
    CHECK(v[2] == 0.0);
  }
  // equilibrium families at rho = 1 with free q
  for (double q : {-2.0, 0.3, 2.7}) {
    for (double y : {0.0, 1.0, -1.0}) {
      const auto v = vector_field({y, q, 1.0});
      CHECK(v[0] == 0.0);
      CHECK(v[1] == 0.0);
      CHECK(v[2] == 0.0);
    }
  }
}

TEST_CASE("equilibria catalogue matches the field's zero set") {
  const EquilibriaSet s = equilibria();
  REQUIRE(s.isolated.size() == 3);
  for (const auto& p : s.isolated) {
    const auto v = vector_field(p);
    CHECK(v[0] == 0.0);
    CHECK(v[1] == 0.0);
    CHECK(v[2] == 0.0);
  }
  REQUIRE(s.families.size() == 3);
  for (const auto& fam : s.families) {
    CHECK(fam.rho == 1.0);
    const auto v = vector_field({fam.y, -1.7, fam.rho});
    CHECK(v[0] == 0.0);
    CHECK(v[1] == 0.0);
    CHECK(v[2] == 0.0);
  }

  // no other zeros: scan rho strictly inside (0,1) with y off the roots
  double min_norm = 1e300;
  for (int iy = -10; iy <= 10; ++iy)
    for (int iq = -10; iq <= 10; ++iq)
      for (int ir = 1; ir < 20; ++ir) {
        const double y = 0.1 * iy + 0.05;  // avoids 0 and +-1 exactly
        const double q = 0.3 * iq;
        const double rho = ir / 20.0;
        const auto v = vector_field({y, q, rho});
        min_norm = std::min(min_norm, std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]));
      }
  CHECK(min_norm > 0.01);
}

TEST_CASE("jacobian rows and finite-difference agreement") {
  const auto J0 = jacobian({0.0, 0.0, 0.0});
  CHECK(J0[0][0] == 0.0);
  CHECK(J0[0][1] == 1.0);
  CHECK(J0[0][2] == 0.0);
  CHECK(J0[1][0] == -3.0);
  CHECK(J0[1][1] == -1.0);
  CHECK(J0[1][2] == 0.0);
  CHECK(J0[2][0] == 0.0);
  CHECK(J0[2][1] == 0.0);
  CHECK(J0[2][2] == 1.0);

  const auto J1 = jacobian({1.0, 0.0, 0.0});
  CHECK(J1[1][0] == 6.0);  // d/dy of -3y(1-y^2) at y = 1
  CHECK(J1[0][1] == 1.0);
  CHECK(J1[1][1] == -1.0);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int rep = 0; rep < 5; ++rep) {
    const PhasePoint p{dist(rng), dist(rng), 0.5 * (dist(rng) + 1.0)};
    const auto J = jacobian(p);
    const double eps = 1e-6;
    for (int k = 0; k < 3; ++k) {
      PhasePoint pp = p, pm = p;
      double* fields_p[3] = {&pp.y, &pp.q, &pp.rho};
      double* fields_m[3] = {&pm.y, &pm.q, &pm.rho};
      *fields_p[k] += eps;
      *fields_m[k] -= eps;
      const auto vp = vector_field(pp);
      const auto vm = vector_field(pm);
      for (int i = 0; i < 3; ++i) {
        const double fd = (vp[static_cast<std::size_t>(i)] - vm[static_cast<std::size_t>(i)]) /
                          (2.0 * eps);
        CHECK(std::abs(J[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] - fd) <= 1e-6);
      }
    }
  }
}

TEST_CASE("spectral certificates at the equilibria") {
  const double sq11 = std::sqrt(11.0);

  const SpectralReport rep0 = eigen({0.0, 0.0, 0.0});
  // complex pair (-1 +- i sqrt(11))/2 plus the unstable rho direction
  CHECK(std::abs(rep0.eigenvalues[0].real() + 0.5) <= 1e-12);
  CHECK(std::abs(std::abs(rep0.eigenvalues[0].imag()) - 0.5 * sq11) <= 1e-12);
  CHECK(std::abs(rep0.eigenvalues[1].real() + 0.5) <= 1e-12);
  CHECK(rep0.eigenvalues[0].imag() * rep0.eigenvalues[1].imag() < 0.0);
  CHECK(std::abs(rep0.eigenvalues[2].real() - 1.0) <= 1e-12);
  CHECK(std::abs(rep0.eigenvalues[2].imag()) <= 1e-12);
  CHECK(rep0.charpoly_residual <= 1e-10);

  // spiral sink in the (y,q) block, expansion along rho: the structure
  // behind excluding y(0) = 0
  CHECK(rep0.eigenvalues[0].real() < 0.0);
  CHECK(rep0.eigenvalues[1].real() < 0.0);
  CHECK(rep0.eigenvalues[2].real() > 0.0);

  // rho-direction eigenvector is (0,0,1)
  CHECK(std::abs(rep0.eigenvectors[2][0]) <= 1e-14);
  CHECK(std::abs(rep0.eigenvectors[2][1]) <= 1e-14);
  CHECK(std::abs(rep0.eigenvectors[2][2] - 1.0) <= 1e-14);

  // the (y,q) eigenvectors have component ratio (-1 -+ i sqrt 11)/6
  for (int i = 0; i < 2; ++i) {
    const auto ratio = rep0.eigenvectors[static_cast<std::size_t>(i)][0] /
                       rep0.eigenvectors[static_cast<std::size_t>(i)][1];
    const std::complex<double> expected(-1.0 / 6.0,
                                        -rep0.eigenvalues[static_cast<std::size_t>(i)].imag() /
                                            std::abs(rep0.eigenvalues[static_cast<std::size_t>(i)]
                                                         .imag()) *
                                            sq11 / 6.0);
    CHECK(std::abs(ratio - expected) <= 1e-12);
  }

  // at (+-1, 0, 0): {2, -3, 1}, matching the homogeneous exponents
  for (double y : {1.0, -1.0}) {
    const SpectralReport rep = eigen({y, 0.0, 0.0});
    CHECK(std::abs(rep.eigenvalues[0].real() - 2.0) <= 1e-12);
    CHECK(std::abs(rep.eigenvalues[1].real() + 3.0) <= 1e-12);
    CHECK(std::abs(rep.eigenvalues[2].real() - 1.0) <= 1e-12);
    CHECK(std::abs(rep.eigenvalues[0].imag()) <= 1e-12);
    CHECK(rep.charpoly_residual <= 1e-10);
  }

  // family equilibrium at rho = 1: defective double zero plus -2
  const SpectralReport repf = eigen({1.0, 0.7, 1.0});
  CHECK(std::abs(repf.eigenvalues[0]) <= 1e-12);
  CHECK(std::abs(repf.eigenvalues[1]) <= 1e-12);
  CHECK(std::abs(repf.eigenvalues[2].real() + 2.0) <= 1e-12);
  CHECK(repf.charpoly_residual <= 1e-10);

  CHECK_THROWS_AS(eigen({0.3, 0.0, 0.2}), std::invalid_argument);
}

TEST_CASE("flow: invariant line and heteroclinic orbit") {
  // the trivial line stays exact while rho climbs monotonically
  const Trajectory line = flow({0.0, 0.0, 0.5}, 5.0, 1e-3);
  REQUIRE(!line.truncated);
  double prev_rho = 0.0;
  for (const auto& p : line.points) {
    CHECK(p.y == 0.0);
    CHECK(p.q == 0.0);
    CHECK(p.rho >= prev_rho);
    prev_rho = p.rho;
  }
  CHECK(line.points.back().rho > 0.99);

  // orbit leaving (1,0,0) along the unstable eigenvector reaches the
  // profile: y interpolated at rho = 1/2 matches the closed form
  const double eps = 1e-3;
  const PhasePoint start{1.0 - 1.6 * eps * eps, -3.2 * eps * eps, eps};
  const Trajectory orbit = flow_to_rho(start, 1.0 - 1e-6, 1e-3);
  REQUIRE(!orbit.truncated);
  CHECK(std::abs(y_at_rho(orbit, 0.5) - 15.0 / 23.0) <= 1e-4);
  CHECK(std::abs(orbit.points.back().q + 1.25) <= 1e-3);
  CHECK(std::abs(orbit.points.back().y) <= 1e-4);

  CHECK_THROWS_AS(flow({0.0, 0.0, 0.5}, 1.0, -1e-3), std::invalid_argument);
}

TEST_CASE("time-reversed flow returns near the start") {
  const double eps = 1e-3;
  const PhasePoint start{1.0 - 1.6 * eps * eps, -3.2 * eps * eps, eps};
  const Trajectory fwd = flow_to_rho(start, 0.9, 1e-3);
  REQUIRE(!fwd.truncated);
  const double tau_total = fwd.tau.back();
  const Trajectory back = flow(fwd.points.back(), -tau_total, 1e-3);
  const PhasePoint end = back.points.back();
  const double gap = std::sqrt((end.y - start.y) * (end.y - start.y) +
                               (end.q - start.q) * (end.q - start.q) +
                               (end.rho - start.rho) * (end.rho - start.rho));
  CHECK(gap <= 1e-3);
}

TEST_CASE("heteroclinic check on the computed profile") {
  const auto p = skyrme::profile::solve_profile(1e-10, 2048);
  const HeteroclinicReport rep = heteroclinic_check(p);
  const double h = p.y.grid->spacing();
  CHECK(rep.tangent_residual_sup <= 100.0 * h * h);
  CHECK(std::abs(rep.q_tilde + 1.25) <= 1e-3);
  CHECK(rep.start_gap <= 1e-5);
  CHECK(rep.end_gap <= 1e-3);

  // trivial profile: the orbit collapses onto (0, 0, rho)
  skyrme::profile::ProfileSolution trivial;
  trivial.y = skyrme::radial::zero_field(p.y.grid);
  trivial.dy = skyrme::radial::zero_field(p.y.grid);
  trivial.c_shoot = 0.0;
  trivial.branch = 0;
  const HeteroclinicReport rep0 = heteroclinic_check(trivial);
  CHECK(rep0.tangent_residual_sup == 0.0);
  CHECK(rep0.q_tilde == 0.0);

  // negative control: a perturbed field is not an orbit
  skyrme::profile::ProfileSolution wrong = p;
  for (std::size_t j = 0; j < wrong.y.size(); ++j)
    wrong.y[j] += 0.01 * std::sin(3.0 * wrong.y.grid->node(j));
  const HeteroclinicReport bad = heteroclinic_check(wrong);
  CHECK(bad.tangent_residual_sup > 100.0 * h * h);
}
