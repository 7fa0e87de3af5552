// skyrme-lab: reproducible experiments on the strong-field equivariant
// Skyrme model's self-similar blow-up, driven through the shared
// library's C interface.
//
// Exit codes: 0 all gates pass, 1 numeric gate failure, 2 consistency
// suite inversion, 3 I/O error, 4 configuration error.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "skyrme/skyrme.h"
#include "output_utils.hpp"

namespace fs = std::filesystem;
using cli_out::JsonWriter;

namespace {

constexpr int kExitGateFailure = 1;
constexpr int kExitInversion = 2;
constexpr int kExitIo = 3;
constexpr int kExitConfig = 4;

struct RunConfig {
  std::size_t n = 0;  // 0 = per-command default
  double tol = 0.0;   // 0 = per-command default
  double t_end = -0.25;
  double R = 2.0;
  long long seed = 42;
  std::string out_dir = "out";
  bool emit_svg = false;
  std::string mode = "consistent";
};

std::string resolve_out_dir(const RunConfig& cfg) {
  const char* env = std::getenv("SKYRME_OUT");
  std::string dir = env ? std::string(env) : cfg.out_dir;
  fs::create_directories(dir);
  return dir;
}

void fail_api(const std::string& what) {
  std::cerr << "error: " << what << ": " << skyrme_last_error() << "\n";
}

using ProfilePtr = std::unique_ptr<skyrme_profile, decltype(&skyrme_profile_free)>;

ProfilePtr solve_profile_handle(std::size_t n, double tol, skyrme_status& st) {
  skyrme_profile_options opt;
  skyrme_profile_options_init(&opt);
  if (n) opt.n = n;
  if (tol > 0.0) opt.tol = tol;
  skyrme_profile* raw = nullptr;
  st = skyrme_profile_solve(&opt, &raw);
  return ProfilePtr(raw, &skyrme_profile_free);
}

// ---------------------------------------------------------------- profile

int run_profile(const RunConfig& cfg) {
  const std::string dir = resolve_out_dir(cfg);
  const std::size_t n = cfg.n ? cfg.n : 4096;
  const double gap_tol = cfg.tol > 0.0 ? cfg.tol : 1e-6;

  skyrme_status st;
  ProfilePtr p = solve_profile_handle(n, 0.0, st);
  if (st != SKYRME_OK) {
    fail_api("profile solve");
    return st == SKYRME_ERR_INVALID_ARGUMENT ? kExitConfig : kExitIo;
  }
  if (skyrme_profile_write_csv(p.get(), (dir + "/profile.csv").c_str()) != SKYRME_OK) {
    fail_api("profile csv");
    return kExitIo;
  }

  const double c_shoot = skyrme_profile_c_shoot(p.get());
  const double residual_sup = skyrme_profile_residual_sup(p.get());
  const double gap = skyrme_profile_max_oracle_gap(p.get());
  const double h_grid = 1.0 / static_cast<double>(n);
  const double residual_tol = 100.0 * h_grid * h_grid;
  const double step = 1e-4;  // integrator step behind the defaults
  const double gap_floor = 100.0 * step * step;

  const bool c_ok = std::abs(c_shoot + 1.6) <= 1e-6;
  const bool gap_ok = gap <= gap_tol;
  const bool res_ok = residual_sup <= residual_tol;
  const bool pass = c_ok && gap_ok && res_ok;

  std::string reason;
  if (!pass) {
    if (!gap_ok && gap_tol < gap_floor)
      reason = "discretization-limited";
    else if (!gap_ok)
      reason = "oracle-gap-exceeded";
    else if (!c_ok)
      reason = "c-shoot-out-of-tolerance";
    else
      reason = "residual-exceeded";
  }

  JsonWriter jw;
  jw.field("schema_version", 1LL)
      .field("seed", cfg.seed)
      .field("n", static_cast<long long>(n))
      .field("c_shoot", c_shoot)
      .field("residual_sup", residual_sup)
      .field("max_closed_form_gap", gap)
      .field("gate_c_shoot_tol", 1e-6)
      .field("gate_oracle_gap_tol", gap_tol)
      .field("gate_residual_tol", residual_tol)
      .field("pass", pass)
      .field("failure_reason", reason);
  jw.write(dir + "/profile.json");

  std::cout << (pass ? "profile: PASS" : "profile: FAIL (" + reason + ")") << "\n";
  return pass ? 0 : kExitGateFailure;
}

// --------------------------------------------------------------- minimize

int run_minimize(const RunConfig& cfg) {
  const std::string dir = resolve_out_dir(cfg);
  skyrme_minimize_options opt;
  skyrme_minimize_options_init(&opt);
  if (cfg.n) opt.n = cfg.n;
  if (cfg.tol > 0.0) opt.tol = cfg.tol;

  skyrme_minimize_result* raw = nullptr;
  if (skyrme_minimize_run(&opt, nullptr, &raw) != SKYRME_OK) {
    fail_api("minimize");
    return kExitIo;
  }
  std::unique_ptr<skyrme_minimize_result, decltype(&skyrme_minimize_result_free)> r(
      raw, &skyrme_minimize_result_free);

  if (skyrme_minimize_write_iterates_csv(r.get(), (dir + "/minimize_iterates.csv").c_str()) !=
      SKYRME_OK) {
    fail_api("minimize csv");
    return kExitIo;
  }

  const double J = skyrme_minimize_J(r.get());
  const bool monotone = skyrme_minimize_monotone(r.get()) != 0;
  const double max_abs = skyrme_minimize_max_abs_psi(r.get());
  const double gap = skyrme_minimize_oracle_gap(r.get());
  const bool converged = skyrme_minimize_converged(r.get()) != 0;
  const bool pass = J < 0.0 && monotone && max_abs <= 1.0 + 1e-8 && gap <= 1e-4;

  JsonWriter jw;
  jw.field("schema_version", 1LL)
      .field("seed", cfg.seed)
      .field("n", static_cast<long long>(opt.n))
      .field("J_value", J)
      .field("c0_estimate", skyrme_minimize_c0_estimate(r.get()))
      .field("monotone", monotone)
      .field("max_abs_psi", max_abs)
      .field("iterations", static_cast<long long>(skyrme_minimize_iterations(r.get())))
      .field("grad_norm", skyrme_minimize_grad_norm(r.get()))
      .field("oracle_gap", gap)
      .field("converged", converged)
      .field("pass", pass);
  jw.write(dir + "/minimize.json");

  std::cout << (pass ? "minimize: PASS" : "minimize: FAIL") << "\n";
  return pass ? 0 : kExitGateFailure;
}

// ----------------------------------------------------------------- dynsys

std::string spectral_json(const skyrme_spectral_report& rep) {
  JsonWriter jw;
  jw.array("eigenvalues_re", {rep.eigenvalues_re[0], rep.eigenvalues_re[1], rep.eigenvalues_re[2]})
      .array("eigenvalues_im",
             {rep.eigenvalues_im[0], rep.eigenvalues_im[1], rep.eigenvalues_im[2]})
      .array("eigenvectors_re",
             std::vector<double>(rep.eigenvectors_re, rep.eigenvectors_re + 9))
      .array("eigenvectors_im",
             std::vector<double>(rep.eigenvectors_im, rep.eigenvectors_im + 9))
      .field("charpoly_residual", rep.charpoly_residual);
  return jw.str();
}

int run_dynsys(const RunConfig& cfg) {
  const std::string dir = resolve_out_dir(cfg);
  const std::size_t n = cfg.n ? cfg.n : 4096;

  skyrme_status st;
  ProfilePtr p = solve_profile_handle(n, 0.0, st);
  if (st != SKYRME_OK) {
    fail_api("profile solve");
    return kExitIo;
  }

  const double origin[3] = {0.0, 0.0, 0.0};
  const double plus[3] = {1.0, 0.0, 0.0};
  const double minus[3] = {-1.0, 0.0, 0.0};
  skyrme_spectral_report rep0, repp, repm;
  if (skyrme_eigen(origin, &rep0) != SKYRME_OK || skyrme_eigen(plus, &repp) != SKYRME_OK ||
      skyrme_eigen(minus, &repm) != SKYRME_OK) {
    fail_api("eigen");
    return kExitIo;
  }

  skyrme_heteroclinic_report het;
  if (skyrme_heteroclinic_check(p.get(), &het) != SKYRME_OK) {
    fail_api("heteroclinic");
    return kExitIo;
  }

  // orbit leaving (1,0,0) along the unstable direction
  const double eps = 1e-3;
  const double start[3] = {1.0 - 1.6 * eps * eps, -3.2 * eps * eps, eps};
  skyrme_trajectory* traw = nullptr;
  if (skyrme_flow_to_rho(start, 1.0 - 1e-6, 1e-3, &traw) != SKYRME_OK) {
    fail_api("flow");
    return kExitIo;
  }
  std::unique_ptr<skyrme_trajectory, decltype(&skyrme_trajectory_free)> traj(
      traw, &skyrme_trajectory_free);
  if (skyrme_trajectory_write_csv(traj.get(), (dir + "/trajectory.csv").c_str()) != SKYRME_OK) {
    fail_api("trajectory csv");
    return kExitIo;
  }

  const double sq11 = std::sqrt(11.0);
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
  const bool eig0_ok = close(rep0.eigenvalues_re[0], -0.5) &&
                       close(std::abs(rep0.eigenvalues_im[0]), 0.5 * sq11) &&
                       close(rep0.eigenvalues_re[2], 1.0) && close(rep0.eigenvalues_im[2], 0.0);
  const bool eigp_ok = close(repp.eigenvalues_re[0], 2.0) && close(repp.eigenvalues_re[1], -3.0) &&
                       close(repp.eigenvalues_re[2], 1.0);
  const double h_grid = 1.0 / static_cast<double>(n);
  const bool het_ok = het.tangent_residual_sup <= 100.0 * h_grid * h_grid &&
                      std::abs(het.q_tilde + 1.25) <= 1e-3;
  const bool pass = eig0_ok && eigp_ok && het_ok &&
                    rep0.charpoly_residual <= 1e-10 && repp.charpoly_residual <= 1e-10;

  JsonWriter jw;
  jw.field("schema_version", 1LL)
      .field("seed", cfg.seed)
      .raw("origin", spectral_json(rep0))
      .raw("plus_one", spectral_json(repp))
      .raw("minus_one", spectral_json(repm))
      .field("tangent_residual_sup", het.tangent_residual_sup)
      .field("q_tilde", het.q_tilde)
      .field("start_gap", het.start_gap)
      .field("end_gap", het.end_gap)
      .field("pass", pass);
  jw.write(dir + "/dynsys.json");

  std::cout << (pass ? "dynsys: PASS" : "dynsys: FAIL") << "\n";
  return pass ? 0 : kExitGateFailure;
}

// ----------------------------------------------------------------- evolve

int run_evolve(const RunConfig& cfg) {
  const std::string dir = resolve_out_dir(cfg);
  if (!(cfg.R > 0.0) || cfg.R > 2.0) {
    std::cerr << "error: --R must lie in (0, 2]\n";
    return kExitConfig;
  }
  if (!(cfg.t_end > -1.0) || !(cfg.t_end < 0.0)) {
    std::cerr << "error: --t-end must lie in (-1, 0)\n";
    return kExitConfig;
  }

  skyrme_status st;
  ProfilePtr p = solve_profile_handle(4096, 0.0, st);
  if (st != SKYRME_OK) {
    fail_api("profile solve");
    return kExitIo;
  }

  skyrme_evolution_options opt;
  skyrme_evolution_options_init(&opt);
  if (cfg.n) opt.n = cfg.n;
  opt.R = cfg.R;
  opt.t_end = cfg.t_end;

  skyrme_evolution* eraw = nullptr;
  if (skyrme_evolution_run(p.get(), &opt, &eraw) != SKYRME_OK) {
    fail_api("evolution");
    return kExitIo;
  }
  std::unique_ptr<skyrme_evolution, decltype(&skyrme_evolution_free)> evo(
      eraw, &skyrme_evolution_free);

  if (skyrme_evolution_write_diagnostics_csv(evo.get(),
                                             (dir + "/evolve_diagnostics.csv").c_str()) !=
      SKYRME_OK) {
    fail_api("diagnostics csv");
    return kExitIo;
  }
  for (std::size_t k = 0; k < skyrme_evolution_snapshot_count(evo.get()); ++k) {
    const std::string path = dir + "/snapshot_" + std::to_string(k) + ".csv";
    if (skyrme_evolution_write_snapshot_csv(evo.get(), k, path.c_str()) != SKYRME_OK) {
      fail_api("snapshot csv");
      return kExitIo;
    }
  }

  const std::size_t m = skyrme_evolution_sample_count(evo.get());
  std::vector<double> ts(m), gs(m), es(m), fs(m), ss(m);
  skyrme_evolution_copy_samples(evo.get(), ts.data(), gs.data(), es.data(), fs.data(), ss.data(),
                                m);
  const double selfsim_final = ss.empty() ? 0.0 : ss.back();
  const double exponent = skyrme_evolution_exponent(evo.get());
  const double amplitude = skyrme_evolution_amplitude(evo.get());

  const double scale = 4096.0 / static_cast<double>(opt.n);
  const double selfsim_gate = 5e-3 * scale * scale;
  const bool selfsim_ok = selfsim_final <= selfsim_gate;
  // the growth-law gate applies once the run covers the fit window down
  // to t = -0.05; shorter runs still report their narrow-window fit
  const bool fit_window = cfg.t_end >= -0.05 - 1e-9;
  const bool fit_ok = !fit_window || (std::abs(exponent + 1.0) <= 0.05 &&
                                      std::abs(amplitude - 1.3416407864998738) <=
                                          0.05 * 1.3416407864998738);
  const bool pass = selfsim_ok && fit_ok;

  JsonWriter jw;
  jw.field("schema_version", 1LL)
      .field("seed", cfg.seed)
      .field("n", static_cast<long long>(opt.n))
      .field("R", opt.R)
      .field("t_end", cfg.t_end)
      .field("final_t", skyrme_evolution_final_time(evo.get()))
      .field("exponent", exponent)
      .field("amplitude", amplitude)
      .field("selfsim_err_final", selfsim_final)
      .field("gate_selfsim", selfsim_gate)
      .array("sample_t", ts)
      .array("sample_sup_grad", gs)
      .array("sample_energy", es)
      .array("sample_flux_accum", fs)
      .array("sample_selfsim_err", ss)
      .field("pass", pass);
  jw.write(dir + "/blowup.json");

  std::cout << (pass ? "evolve: PASS" : "evolve: FAIL") << "\n";
  return pass ? 0 : kExitGateFailure;
}

// ----------------------------------------------------------------- verify

int run_verify(const RunConfig& cfg) {
  const bool literal = cfg.mode == "literal";
  skyrme_verify_report rep;
  if (skyrme_verify(literal ? 1 : 0, &rep) != SKYRME_OK) {
    fail_api("verify");
    return kExitIo;
  }
  std::cout << "ode residual max:        " << cli_out::num17(rep.ode_residual_max)
            << (rep.ode_ok ? "  PASS" : "  FAIL") << "\n";
  std::cout << "angle residual max:      " << cli_out::num17(rep.angle_residual_max)
            << (rep.angle_ok ? "  PASS" : "  FAIL") << "\n";
  std::cout << "wave-eq residual max:    " << cli_out::num17(rep.pde_residual_max)
            << (rep.pde_ok ? "  PASS" : "  FAIL") << "\n";
  std::cout << "literal-sign control:    " << cli_out::num17(rep.literal_min_abs)
            << (rep.literal_rejected ? "  rejected as expected" : "  UNEXPECTEDLY SMALL")
            << "\n";
  if (literal) {
    std::cout << "literal mode: the adopted-sign consistency chain does not hold; "
                 "the control residual above is O(1)\n";
  }
  if (rep.passed) {
    std::cout << "verify: PASS\n";
    return 0;
  }
  std::cout << "verify: FAIL\n";
  return kExitInversion;
}

// ----------------------------------------------------------------- report

int run_report(const RunConfig& cfg) {
  const std::string dir = resolve_out_dir(cfg);
  std::vector<std::string> missing;
  const std::string profile_json = dir + "/profile.json";
  const std::string blowup_json = dir + "/blowup.json";
  for (const auto& f : {profile_json, blowup_json})
    if (!fs::exists(f)) missing.push_back(f);
  if (cfg.emit_svg) {
    for (const auto& f : {dir + "/profile.csv", dir + "/evolve_diagnostics.csv",
                          dir + "/trajectory.csv"})
      if (!fs::exists(f)) missing.push_back(f);
  }
  if (!missing.empty()) {
    std::cerr << "error: missing required inputs:\n";
    for (const auto& f : missing) std::cerr << "  " << f << "\n";
    return kExitIo;
  }

  nlohmann::json profile, blowup;
  {
    std::ifstream a(profile_json), b(blowup_json);
    a >> profile;
    b >> blowup;
  }

  JsonWriter jw;
  jw.field("schema_version", 1LL).field("seed", cfg.seed);
  jw.field("c_shoot", profile["c_shoot"].get<double>())
      .field("residual_sup", profile["residual_sup"].get<double>())
      .field("max_closed_form_gap", profile["max_closed_form_gap"].get<double>())
      .field("exponent", blowup["exponent"].get<double>())
      .field("amplitude", blowup["amplitude"].get<double>())
      .field("selfsim_err_final", blowup["selfsim_err_final"].get<double>());
  for (const char* name : {"minimize", "dynsys"}) {
    const std::string path = dir + "/" + name + ".json";
    if (fs::exists(path)) {
      std::ifstream in(path);
      nlohmann::json j;
      in >> j;
      jw.field(std::string(name) + "_pass", j["pass"].get<bool>());
      if (std::string(name) == "minimize") jw.field("J_value", j["J_value"].get<double>());
      if (std::string(name) == "dynsys") jw.field("q_tilde", j["q_tilde"].get<double>());
    }
  }
  jw.write(dir + "/report.json");

  if (cfg.emit_svg) {
    try {
      const auto prof = cli_out::read_csv(dir + "/profile.csv");
      std::vector<double> xs, ys;
      for (const auto& row : prof.rows) {
        xs.push_back(row[prof.col("rho")]);
        ys.push_back(row[prof.col("y")]);
      }
      cli_out::write_svg_polyline(dir + "/profile_y.svg", xs, ys, "self-similar profile y(rho)");

      const auto diag = cli_out::read_csv(dir + "/evolve_diagnostics.csv");
      std::vector<double> lx, ly;
      for (const auto& row : diag.rows) {
        const double t = row[diag.col("t")];
        const double g = row[diag.col("sup_grad")];
        if (t < 0.0 && g > 0.0) {
          lx.push_back(std::log10(-t));
          ly.push_back(std::log10(g));
        }
      }
      cli_out::SvgLine fit;
      fit.present = true;
      const double expn = blowup["exponent"].get<double>();
      const double ampl = blowup["amplitude"].get<double>();
      fit.x0 = lx.front();
      fit.x1 = lx.back();
      fit.y0 = std::log10(ampl) + expn * fit.x0;
      fit.y1 = std::log10(ampl) + expn * fit.x1;
      cli_out::write_svg_polyline(dir + "/blowup_loglog.svg", lx, ly,
                                  "sup |v_r| vs |t| (log-log) with fitted law", fit);

      const auto traj = cli_out::read_csv(dir + "/trajectory.csv");
      std::vector<double> py, pq;
      for (const auto& row : traj.rows) {
        py.push_back(row[traj.col("y")]);
        pq.push_back(row[traj.col("q")]);
      }
      cli_out::write_svg_polyline(dir + "/phase_orbit.svg", py, pq,
                                  "heteroclinic orbit projection (y, q)");
    } catch (const std::exception& e) {
      std::cerr << "error: svg generation: " << e.what() << "\n";
      return kExitIo;
    }
  }
  std::cout << "report: written\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"skyrme-lab: self-similar blow-up laboratory for the strong-field "
               "equivariant Skyrme model"};
  app.require_subcommand(1);

  app.add_option("--n", cfg.n, "grid resolution (0 = command default)");
  app.add_option("--tol", cfg.tol, "primary tolerance of the command (0 = default)");
  app.add_option("--t-end", cfg.t_end, "evolution stop time in (-1, 0)");
  app.add_option("--R", cfg.R, "outer radius of the evolution domain, in (0, 2]");
  app.add_option("--seed", cfg.seed, "seed recorded in outputs (randomized probes)");
  app.add_option("--out", cfg.out_dir, "output directory (env SKYRME_OUT overrides)");
  app.add_flag("--svg", cfg.emit_svg, "emit SVG plots from the report command");
  app.add_option("--mode", cfg.mode, "verify mode: consistent|literal")
      ->check(CLI::IsMember({"consistent", "literal"}));

  auto* profile = app.add_subcommand("profile", "shooting profile with CSV/JSON outputs");
  auto* minimize = app.add_subcommand("minimize", "variational minimization of J");
  auto* dynsys = app.add_subcommand("dynsys", "phase-space spectra and heteroclinic orbit");
  auto* evolve = app.add_subcommand("evolve", "wave evolution and blow-up diagnostics");
  auto* verify = app.add_subcommand("verify", "substitution-consistency suite");
  auto* report = app.add_subcommand("report", "aggregate prior outputs into report.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (profile->parsed()) return run_profile(cfg);
    if (minimize->parsed()) return run_minimize(cfg);
    if (dynsys->parsed()) return run_dynsys(cfg);
    if (evolve->parsed()) return run_evolve(cfg);
    if (verify->parsed()) return run_verify(cfg);
    if (report->parsed()) return run_report(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitConfig;
}
