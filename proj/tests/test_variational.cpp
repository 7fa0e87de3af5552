#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "profile/closed_form.hpp"
#include "variational/functional.hpp"
#include "variational/potential.hpp"

using namespace skyrme::variational;
using skyrme::radial::GridKind;
using skyrme::radial::RadialField;
using skyrme::radial::make_field;
using skyrme::radial::make_grid;
using skyrme::radial::zero_field;

namespace {

constexpr double kJ0 = -0.2771942599676266;  // J at the profile, high-precision quadrature

RadialField oracle_field(std::size_t n) {
  return make_field(make_grid(n, 1.0, GridKind::InteriorOffset),
                    skyrme::profile::rational_profile);
}

RadialField smooth_random_field(std::size_t n, std::mt19937& rng, double amplitude) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  double a[4];
  for (double& x : a) x = coeff(rng);
  auto g = make_grid(n, 1.0, GridKind::InteriorOffset);
  RadialField f = zero_field(g);
  double sup = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double rho = g->node(j);
    double v = 0.0;
    for (int k = 0; k < 4; ++k) v += a[k] * std::sin((k + 1) * M_PI * rho);
    f[j] = v;
    sup = std::max(sup, std::abs(v));
  }
  for (auto& v : f.values) v *= amplitude / std::max(sup, 1e-30);
  return f;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double quad(const std::function<double(double)>& f, double a, double b, double tol = 1e-12) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

TEST_CASE("regularized potential values and smoothness") {
  Potential pot;
  CHECK(pot.F(1.0) == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(pot.F(-1.0) == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(pot.F(std::sqrt(2.0)) == 0.0);
  CHECK(pot.F(2.0) == 0.0);
  CHECK(pot.F(0.5) == doctest::Approx(-21.0 / 32.0).epsilon(1e-15));

  // C^1 joins: derivative is continuous and vanishes at the seams
  CHECK(pot.dF(1.0 - 1e-9) == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(pot.dF(1.0 + 1e-9) == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(pot.dF(std::sqrt(2.0) - 1e-9) == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(pot.dF(std::sqrt(2.0) + 1e-9) == 0.0);

  // monotone bridge: F rises from -3/2 to 0 across [1, sqrt(2)]
  double prev = pot.F(1.0);
  for (int k = 1; k <= 50; ++k) {
    const double psi = 1.0 + (std::sqrt(2.0) - 1.0) * k / 50.0;
    CHECK(pot.F(psi) >= prev - 1e-15);
    prev = pot.F(psi);
  }

  // derivative consistency against central differences
  for (double psi : {-1.3, -0.7, 0.2, 0.9, 1.2}) {
    const double fd = (pot.F(psi + 1e-6) - pot.F(psi - 1e-6)) / 2e-6;
    CHECK(pot.dF(psi) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("evaluate_J: zero field, oracle value, polynomial cross-check") {
  auto g = make_grid(1024, 1.0, GridKind::InteriorOffset);
  CHECK(evaluate_J(zero_field(g)) == 0.0);

  CHECK(std::abs(evaluate_J(oracle_field(1024)) - kJ0) <= 1e-6);

  // psi = 1 - rho^2: J = 2/5 + (1/2) int F(psi)/(1-rho^2) drho = -9/35,
  // cross-checked against an independent adaptive quadrature
  Potential pot;
  const double potential_part = quad(
      [&](double r) {
        const double u = (1.0 - r) * (1.0 + r);
        return u == 0.0 ? 0.0 : pot.F(u) / u;
      },
      0.0, 1.0, 1e-10);
  const double expected = 0.5 * 0.8 + 0.5 * potential_part;
  CHECK(expected == doctest::Approx(-9.0 / 35.0).epsilon(1e-8));

  auto f = make_field(g, [](double r) { return 1.0 - r * r; });
  CHECK(evaluate_J(f) == doctest::Approx(expected).epsilon(2e-6));

  // grid contract enforced
  auto bad = make_field(make_grid(64, 2.0, GridKind::InteriorOffset), [](double) { return 0.0; });
  CHECK_THROWS_AS(evaluate_J(bad), std::invalid_argument);
}

TEST_CASE("gradient_J: critical points and duality with J") {
  auto g = make_grid(1024, 1.0, GridKind::InteriorOffset);

  // psi = 0 is stationary, exactly
  auto gz = gradient_J(zero_field(g));
  for (double v : gz.values) CHECK(v == 0.0);

  // The sampled oracle is stationary to the stencil order over the bulk
  // of the interval. Two rows are excluded on structural grounds: the
  // pinned boundary row carries the psi(1) = 0 constraint, and within
  // rho < 0.1 the diagonal L^2(rho^2) metric's cell average differs
  // from the pointwise 1/rho^2 weight by a relative h^2/(12 rho^2), so
  // the certificate is checked where that factor stays below the bound.
  auto go = gradient_J(oracle_field(1024));
  double sup = 0.0;
  for (std::size_t j = 0; j + 1 < go.size(); ++j)
    if (go.grid->node(j) >= 0.1) sup = std::max(sup, std::abs(go[j]));
  const double h = 1.0 / 1024.0;
  CHECK(sup <= 100.0 * h * h);

  // directional derivative matches <grad, eta> in L^2(rho^2)
  std::mt19937 rng(42);
  for (int rep = 0; rep < 3; ++rep) {
    RadialField psi = smooth_random_field(512, rng, 0.9);
    RadialField eta = smooth_random_field(512, rng, 0.9);
    const RadialField grad = gradient_J(psi);
    const auto vol = skyrme::radial::cell_rho2_volumes(*psi.grid);
    double inner = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) inner += grad[j] * eta[j] * vol[j];
    const double eps = 1e-5;
    RadialField plus = psi, minus = psi;
    for (std::size_t j = 0; j < psi.size(); ++j) {
      plus[j] += eps * eta[j];
      minus[j] -= eps * eta[j];
    }
    const double fd = (evaluate_J(plus) - evaluate_J(minus)) / (2.0 * eps);
    CHECK(std::abs(fd - inner) <= 1e-8);
  }
}

TEST_CASE("second variation at the trivial solution") {
  auto g = make_grid(4096, 1.0, GridKind::InteriorOffset);
  auto eta = make_field(g, [](double r) { return (1.0 - r * r) * (1.0 - r * r); });

  const double sv = second_variation(zero_field(g), eta);
  CHECK(sv == doctest::Approx(-304.0 / 315.0).epsilon(1e-6));
  CHECK(sv < 0.0);

  CHECK(second_variation(zero_field(g), zero_field(g)) == 0.0);

  // the -6 coefficient variant is negative for the same test function
  const double hh = g->spacing();
  double den = 0.0;
  for (std::size_t j = 0; j < g->size(); ++j) {
    const double rho = g->node(j);
    den += eta[j] * eta[j] * hh / ((1.0 - rho) * (1.0 + rho));
  }
  const double energy_term = sv + 3.0 * den;  // strips the F''(0)/2 = -3 part
  const double paper_variant = energy_term - 6.0 * den;
  CHECK(paper_variant == doctest::Approx(-736.0 / 315.0).epsilon(1e-5));
  CHECK(paper_variant < 0.0);
}

TEST_CASE("second variation equals the central second difference") {
  std::mt19937 rng(1234);
  for (int rep = 0; rep < 3; ++rep) {
    RadialField ybar = smooth_random_field(512, rng, 0.85);
    RadialField eta = smooth_random_field(512, rng, 0.85);
    const double sv = second_variation(ybar, eta);
    const double eps = 1e-4;
    RadialField plus = ybar, minus = ybar;
    for (std::size_t j = 0; j < ybar.size(); ++j) {
      plus[j] += eps * eta[j];
      minus[j] -= eps * eta[j];
    }
    const double fd =
        (evaluate_J(plus) - 2.0 * evaluate_J(ybar) + evaluate_J(minus)) / (eps * eps);
    CHECK(std::abs(fd - sv) <= 1e-6);
  }
}

TEST_CASE("hardy quotient") {
  {
    auto g = make_grid(262144, 1.0, GridKind::InteriorOffset);
    auto eta = make_field(g, [](double r) { return (1.0 - r * r) * (1.0 - r * r); });
    const double q = hardy_quotient(eta);
    CHECK(std::abs(q - 8.0 / 9.0) <= 1e-10);
    CHECK(q < 6.0);
  }
  {
    auto g = make_grid(65536, 1.0, GridKind::InteriorOffset);
    auto eta = make_field(g, [](double r) { return r * (1.0 - r * r); });
    CHECK(hardy_quotient(eta) == doctest::Approx(22.0 / 7.0).epsilon(1e-8));

    // scale invariance
    RadialField scaled = eta;
    for (auto& v : scaled.values) v *= 2.7;
    CHECK(hardy_quotient(scaled) == doctest::Approx(hardy_quotient(eta)).epsilon(1e-14));

    CHECK_THROWS_AS(hardy_quotient(zero_field(g)), std::invalid_argument);
  }
}

TEST_CASE("monotonize: flattening, reflection, clamping") {
  auto g = make_grid(512, 1.0, GridKind::InteriorOffset);
  auto base = make_field(g, [](double r) { return -skyrme::profile::rational_profile(r); });
  REQUIRE(is_monotone(base));

  // monotone input is returned unchanged
  const RadialField same = monotonize(base);
  for (std::size_t j = 0; j < base.size(); ++j) CHECK(same[j] == base[j]);

  // sub-zero dip flattened at its entry level, J strictly decreases
  RadialField dipped = base;
  for (std::size_t j = 0; j < g->size(); ++j) {
    const double rho = g->node(j);
    if (rho >= 0.3 && rho <= 0.5) {
      const double s = std::sin(M_PI * (rho - 0.3) / 0.2);
      dipped[j] -= 0.2 * s * s;
    }
  }
  REQUIRE(!is_monotone(dipped));
  const RadialField flat = monotonize(dipped);
  CHECK(is_monotone(flat));
  CHECK(evaluate_J(flat) <= evaluate_J(dipped) - 1e-6);
  // the clipped stretch is exactly constant at the dip entry level
  bool found_const = false;
  for (std::size_t j = 1; j < flat.size(); ++j) {
    if (dipped[j] < flat[j] && dipped[j - 1] < flat[j - 1]) {
      CHECK(flat[j] == flat[j - 1]);
      found_const = true;
    }
  }
  CHECK(found_const);

  // overshoot with peak below 1: reflect-then-flatten
  RadialField over = base;
  for (std::size_t j = 0; j < g->size(); ++j) {
    const double rho = g->node(j);
    if (rho >= 0.55 && rho <= 0.9) {
      const double s = std::sin(M_PI * (rho - 0.55) / 0.35);
      over[j] += 1.2 * s * s;
    }
  }
  double peak = -2.0;
  for (double v : over.values) peak = std::max(peak, v);
  REQUIRE(peak > 0.0);
  REQUIRE(peak < 1.0);
  const RadialField reflected = monotonize(over);
  CHECK(is_monotone(reflected));
  CHECK(evaluate_J(reflected) <= evaluate_J(over) - 1e-6);

  // overshoot at or above 1: clamped to 1 from the origin
  RadialField tall = base;
  for (std::size_t j = 0; j < g->size(); ++j) {
    const double rho = g->node(j);
    if (rho >= 0.55 && rho <= 0.9) {
      const double s = std::sin(M_PI * (rho - 0.55) / 0.35);
      tall[j] += 1.7 * s * s;
    }
  }
  peak = -2.0;
  for (double v : tall.values) peak = std::max(peak, v);
  REQUIRE(peak >= 1.0);
  const RadialField clamped = monotonize(tall);
  CHECK(is_monotone(clamped));
  CHECK(evaluate_J(clamped) <= evaluate_J(tall) - 1e-6);
  CHECK(std::abs(clamped[0]) == 1.0);

  // idempotence on every corrected output
  for (const RadialField* f : {&flat, &reflected, &clamped}) {
    const RadialField again = monotonize(*f);
    for (std::size_t j = 0; j < f->size(); ++j) CHECK(again[j] == (*f)[j]);
  }
}

TEST_CASE("lipschitz probe") {
  auto g = make_grid(256, 1.0, GridKind::InteriorOffset);
  RadialField u = oracle_field(256);
  RadialField v = u;
  for (auto& x : v.values) x *= 0.99;
  const double ratio = lipschitz_probe(u, v);
  CHECK(std::isfinite(ratio));
  CHECK(ratio > 0.0);

  CHECK_THROWS_AS(lipschitz_probe(u, u), std::invalid_argument);

  // saturated region: F vanishes there, the quotient stays finite
  RadialField far1 = make_field(g, [](double r) { return 5.0 + r; });
  RadialField far2 = make_field(g, [](double r) { return 7.0 - 2.0 * r * r; });
  CHECK(std::isfinite(lipschitz_probe(far1, far2)));

  // seeded corpus: the recorded constant is stable run to run
  auto corpus_max = [&] {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> val(-std::sqrt(2.0), std::sqrt(2.0));
    double worst = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
      RadialField a = zero_field(g), b = zero_field(g);
      for (std::size_t j = 0; j < g->size(); ++j) {
        a[j] = val(rng);
        b[j] = val(rng);
      }
      worst = std::max(worst, lipschitz_probe(a, b));
    }
    return worst;
  };
  const double c1 = corpus_max();
  const double c2 = corpus_max();
  CHECK(c1 == c2);
  // corpus constant recorded at first run (n = 256, seed 42)
  CHECK(c1 == doctest::Approx(39.703328919757453).epsilon(0.10));
}

TEST_CASE("minimize_J from 1 - rho^2 lands on the profile") {
  auto g = make_grid(256, 1.0, GridKind::InteriorOffset);
  auto init = make_field(g, [](double r) { return 1.0 - r * r; });
  const MinimizeResult r = minimize_J(init, 400000, 1e-3);
  CHECK(r.converged);
  CHECK(!r.line_search_failed);
  CHECK(r.grad_norm <= 1e-3);
  CHECK(r.J_value < 0.0);
  CHECK(std::abs(r.J_value - kJ0) <= 1e-5);
  CHECK(is_monotone(r.psi));

  double max_abs = 0.0, gap = 0.0;
  for (std::size_t j = 0; j < r.psi.size(); ++j) {
    max_abs = std::max(max_abs, std::abs(r.psi[j]));
    gap = std::max(gap,
                   std::abs(r.psi[j] - skyrme::profile::rational_profile(g->node(j))));
  }
  CHECK(max_abs <= 1.0 + 1e-8);
  CHECK(gap <= 2e-4);

  CHECK(c0_estimate(r.psi) == doctest::Approx(-1.6).epsilon(2e-2));

  // descent never increased J along the recorded trace
  for (std::size_t k = 1; k < r.history.size(); ++k)
    CHECK(r.history[k][1] <= r.history[k - 1][1] + 1e-15);

  // odd symmetry: the negated start converges to the exact mirror
  RadialField ninit = init;
  for (auto& v : ninit.values) v = -v;
  const MinimizeResult rm = minimize_J(ninit, 400000, 1e-3);
  CHECK(rm.converged);
  for (std::size_t j = 0; j < r.psi.size(); ++j)
    CHECK(rm.psi[j] == doctest::Approx(-r.psi[j]).epsilon(1e-12));

  // regularization independence: swapping the bridge does not move J
  Potential cubic{Bridge::CubicStep};
  CHECK(std::abs(evaluate_J(r.psi, cubic) - evaluate_J(r.psi)) <= 1e-12);
}

TEST_CASE("minimize_J recognizes the stationary saddle at zero") {
  auto g = make_grid(256, 1.0, GridKind::InteriorOffset);
  const MinimizeResult r = minimize_J(zero_field(g), 1000, 1e-10);
  CHECK(r.converged);
  CHECK(r.iterations == 0);
  CHECK(r.J_value == 0.0);
  CHECK(r.grad_norm == 0.0);
}
