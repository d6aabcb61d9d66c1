#include "runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <random>

#include "conical_fn.hpp"
#include "errors.hpp"
#include "flat_dn.hpp"
#include "jet.hpp"
#include "shape_calc.hpp"
#include "strip_solver.hpp"
#include "taylor_cone.hpp"

namespace conedn {

using std::numbers::pi;

void Table::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  for (size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << "\n";
  const size_t rows = data.empty() ? 0 : data.front().size();
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < data.size(); ++c) out << (c ? "," : "") << format_double(data[c][r]);
    out << "\n";
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

nlohmann::json Report::summary() const {
  return {{"subcommand", subcommand}, {"pass", pass}, {"metrics", metrics},
          {"config_hash", config_hash}};
}

void Report::write(const std::string& dir) const {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  const std::filesystem::path base(dir);
  {
    const auto p = (base / (subcommand + ".json")).string();
    std::ofstream out(p);
    if (!out) throw IoError("cannot write '" + p + "'");
    out << summary().dump(2) << "\n";
  }
  for (const auto& t : tables) t.write_csv((base / (subcommand + "_" + t.name + ".csv")).string());
  for (const auto& [name, f] : fields) {
    f.write_csv((base / (subcommand + "_" + name + ".csv")).string());
    f.write_binary((base / (subcommand + "_" + name + ".bin")).string());
  }
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Setup {
  SigmaGrid grid;
  ConicalParams p;
  ConeAngle theta;
  SolverOptions so;
  StripGrid strip;
  RealVec phi, eta, h;
};

Setup make_setup(const RunConfig& cfg) {
  cfg.validate();
  SigmaGrid grid(cfg.L, cfg.n_sigma);
  ConicalParams p;
  p.series_tol = cfg.tol_series;
  p.quad_tol = cfg.tol_quad;
  p.validate();
  const ConeAngle theta = cfg.theta_star ? ConeAngle(*cfg.theta_star) : taylor_angle(cfg.tol_angle, p);
  SolverOptions so;
  so.rel_tol = cfg.tol_solver;
  so.max_iterations = cfg.solver_max_iterations;
  so.restart = cfg.solver_restart;
  return {grid,
          p,
          theta,
          so,
          StripGrid(grid, cfg.n_y),
          cfg.phi.sample(grid),
          cfg.eta_tilde.sample(grid),
          cfg.h.sample(grid)};
}

RealVec minus(const RealVec& a, const RealVec& b) {
  RealVec d(a.size());
  for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

double rel_l2(const SigmaGrid& g, const RealVec& a, const RealVec& ref) {
  const double num = l2_norm(g, minus(a, ref));
  const double den = l2_norm(g, ref);
  if (den == 0.0) return num;
  return num / den;
}

double fit_slope(const RealVec& x, const RealVec& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

nlohmann::json num(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

Report run_angle(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  cfg.validate();
  ConicalParams p;
  p.series_tol = cfg.tol_series;
  p.quad_tol = cfg.tol_quad;
  const ConeAngle a = taylor_angle(cfg.tol_angle, p);
  const LegendreHalf lh = legendre_half(a.theta_star, p);
  Report r;
  const double ratio = a.theta_star / pi;
  r.metrics = {{"theta_star", a.theta_star},       {"theta_over_pi", ratio},
               {"P_half", lh.P},                   {"P1_half", lh.P1},
               {"runtime_s", seconds_since(t0)}};
  r.pass = std::abs(ratio - 0.2738) <= 1e-3 && std::abs(lh.P) <= 1e-9;
  return r;
}

Report run_symbol(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  const Setup s = make_setup(cfg);
  const SymbolTable tab = build_symbol_table(s.grid, s.theta, s.p);
  const int n = s.grid.size();
  Table t{"symbol", {"zeta", "g", "log_k"}, {RealVec(), RealVec(), RealVec()}};
  double series_err = 0.0;
  int compared = 0;
  for (int q = 0; q <= n / 2; ++q) {
    const double z = std::abs(s.grid.frequency(q));
    t.data[0].push_back(z);
    t.data[1].push_back(tab.g[q]);
    t.data[2].push_back(std::log(tab.k_star[q]) + tab.k_star_log[q]);
    try {
      const ConicalJet j = conical_series_jet(z, s.theta.theta_star, 1, s.p);
      series_err = std::max(series_err, std::abs(j.d[1] / j.d[0] - tab.g[q]) /
                                            std::max(std::abs(tab.g[q]), 1e-300));
      ++compared;
    } catch (const EvaluationError&) {
    }
  }
  const double zeta_asym = 100.0, x = zeta_asym * s.theta.theta_star;
  const ConicalJet ja = conical_jet(zeta_asym, s.theta.theta_star, 0, s.p);
  const double asym_ratio = ja.d[0] * std::exp(ja.log_scale - x) *
                            std::sqrt(sinc(s.theta.theta_star)) / bessel_i_scaled(0, x);
  Report r;
  r.tables.push_back(std::move(t));
  r.metrics = {{"theta_star", s.theta.theta_star},
               {"series_vs_quadrature_max_rel", series_err},
               {"series_points", compared},
               {"asymptotic_ratio_zeta100", asym_ratio},
               {"runtime_s", seconds_since(t0)}};
  r.pass = series_err <= 1e-8 && compared > 0 && asym_ratio >= 0.98 && asym_ratio <= 1.02;
  return r;
}

Report run_extend(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  const Setup s = make_setup(cfg);
  const SymbolTable tab = build_symbol_table(s.grid, s.theta, s.p);
  const GridFn phi = GridFn::from_real(s.grid, s.phi);
  RealVec thetas = s.strip.centers();
  for (double& v : thetas) v *= s.theta.theta_star;
  StripField ext = extend_flat(phi, thetas, tab);
  const StripField top = extend_flat(phi, {s.theta.theta_star}, tab);
  const double sup_phi = std::max(sup_norm(s.phi), 1e-300);
  double trace_err = 0.0;
  for (int i = 0; i < s.grid.size(); ++i)
    trace_err = std::max(trace_err, std::abs(top.at(i, 0) - s.phi[i]) / sup_phi);
  const StripField v = StripSolver(ConeProfile::flat(s.theta, s.grid), s.strip, s.so).solve(s.phi);
  double field_err = 0.0;
  for (size_t k = 0; k < v.values().size(); ++k)
    field_err = std::max(field_err, std::abs(v.values()[k] - ext.values()[k]) / sup_phi);
  const double bound = cfg.tol_flat_dy2 * s.strip.dy() * s.strip.dy();
  Report r;
  r.fields.emplace_back("extension", std::move(ext));
  r.metrics = {{"theta_star", s.theta.theta_star},
               {"trace_error", trace_err},
               {"strip_solve_max_diff", field_err},
               {"strip_solve_bound", bound},
               {"runtime_s", seconds_since(t0)}};
  r.pass = trace_err <= 1e-12 && field_err <= bound;
  return r;
}

Report run_solve(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  const Setup s = make_setup(cfg);
  const ConeProfile prof(s.theta, s.grid, s.eta);
  const StripSolver solver(prof, s.strip, s.so);
  SolveStats st;
  StripField v = solver.solve(s.phi, nullptr, &st);
  const DNResult dn = solver.dn(s.phi);
  Report r;
  r.tables.push_back({"dn",
                      {"sigma", "phi", "G", "B", "V"},
                      {s.grid.nodes(), s.phi, dn.g_of_phi, dn.B, dn.V}});
  r.fields.emplace_back("field", std::move(v));
  r.metrics = {{"theta_star", s.theta.theta_star},
               {"sup_eta_tilde", prof.sup_eta_tilde()},
               {"iterations", st.iterations},
               {"relative_residual", st.relative_residual},
               {"B_residual", dn.residual_norm}};
  r.pass = st.relative_residual <= 1e-10;
  if (prof.sup_eta_tilde() == 0.0) {
    const SymbolTable tab = build_symbol_table(s.grid, s.theta, s.p);
    const double err = rel_l2(s.grid, dn.g_of_phi, dn_flat(s.phi, tab));
    const double bound = cfg.tol_flat_dy2 * s.strip.dy() * s.strip.dy();
    r.metrics["flat_symbol_rel_error"] = err;
    r.metrics["flat_symbol_bound"] = bound;
    r.pass = r.pass && err <= bound;
  }
  r.metrics["runtime_s"] = seconds_since(t0);
  return r;
}

Report run_bounds(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  const Setup s = make_setup(cfg);
  const SymbolTable tab = build_symbol_table(s.grid, s.theta, s.p);
  const KernelBoundsReport rep = verify_kernel_bounds(tab, cfg.bounds_zeta_max, cfg.bounds_n_geometric);
  Table t{"kernel_bounds", {"zeta", "S0", "S1", "S2", "S3"}, std::vector<RealVec>(5)};
  for (const auto& row : rep.rows) {
    t.data[0].push_back(row.zeta);
    for (int m = 0; m < 4; ++m) t.data[m + 1].push_back(row.S[m]);
  }
  Report r;
  r.tables.push_back(std::move(t));
  nlohmann::json sup = nlohmann::json::array(), arg = nlohmann::json::array(),
                 var = nlohmann::json::array();
  for (int m = 0; m < 4; ++m) {
    sup.push_back(num(rep.sup[m]));
    arg.push_back(rep.argsup[m]);
    var.push_back(num(rep.plateau_variation[m]));
  }
  r.metrics = {{"theta_star", s.theta.theta_star},
               {"zeta_max", cfg.bounds_zeta_max},
               {"sup_S", sup},
               {"argsup_S", arg},
               {"plateau_variation", var},
               {"plateau_tolerance", kPlateauTolerance},
               {"bessel_sup_integral", rep.bessel.sup_integral},
               {"bessel_sup_weighted", rep.bessel.sup_weighted},
               {"bessel_argsup_x", rep.bessel.argsup_x},
               {"bessel_argsup_k", rep.bessel.argsup_k},
               {"bessel_pass", rep.bessel.pass},
               {"runtime_s", seconds_since(t0)}};
  r.pass = rep.pass;
  return r;
}

Report run_shape_check(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  const Setup s = make_setup(cfg);
  const ConeProfile prof(s.theta, s.grid, s.eta);
  const double e = cfg.shape_eps;
  const std::array<double, 3> eps{4.0 * e, 2.0 * e, e};
  // validates the largest perturbation up front
  prof.perturbed(s.h, eps[0]);
  prof.perturbed(s.h, -eps[0]);
  const StripSolver solver(prof, s.strip, s.so);
  const RealVec formula = shape_derivative(solver, s.phi, s.h);
  std::array<RealVec, 3> fd;
  for (int k = 0; k < 3; ++k) {
    const RealVec dp = StripSolver(prof.perturbed(s.h, eps[k]), s.strip, s.so).dn(s.phi).g_of_phi;
    const RealVec dm = StripSolver(prof.perturbed(s.h, -eps[k]), s.strip, s.so).dn(s.phi).g_of_phi;
    fd[k].resize(dp.size());
    for (size_t i = 0; i < dp.size(); ++i) fd[k][i] = (dp[i] - dm[i]) / (2.0 * eps[k]);
  }
  nlohmann::json errs = nlohmann::json::array();
  for (int k = 0; k < 3; ++k) errs.push_back(rel_l2(s.grid, fd[k], formula));
  const double slope = std::log2(l2_norm(s.grid, minus(fd[0], fd[1])) /
                                 l2_norm(s.grid, minus(fd[1], fd[2])));
  const CotFreeForm cf = cot_free_form(solver, s.phi, s.h);
  const double cot_err = rel_l2(s.grid, cf.lhs, cf.rhs);
  const double err = errs[2].get<double>();
  Report r;
  r.tables.push_back({"shape", {"sigma", "formula", "fd"}, {s.grid.nodes(), formula, fd[2]}});
  r.metrics = {{"theta_star", s.theta.theta_star},
               {"eps", {eps[0], eps[1], eps[2]}},
               {"fd_rel_error", errs},
               {"richardson_slope", num(slope)},
               {"cot_free_rel_error", cot_err},
               {"tolerance", cfg.tol_shape},
               {"runtime_s", seconds_since(t0)}};
  r.pass = err <= cfg.tol_shape && std::abs(slope - 2.0) <= 0.3 && cot_err <= cfg.tol_shape;
  return r;
}

Report run_cancel_check(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  const Setup s = make_setup(cfg);

  // flat: |g^2 - zeta^2| / <zeta> on [0, 200]
  Table flat{"flat_symbol", {"zeta", "ratio"}, {RealVec(), RealVec()}};
  double running = 0.0, at_half = 0.0;
  const double zmax = 200.0;
  for (int k = 0; k <= 400; ++k) {
    const double z = 0.5 * k;
    const double g = flat_symbol(z, s.theta.theta_star, s.p);
    const double v = std::abs(g * g - z * z) / std::sqrt(1.0 + z * z);
    flat.data[0].push_back(z);
    flat.data[1].push_back(v);
    running = std::max(running, v);
    if (z <= zmax / 2.0) at_half = running;
  }
  const double flat_var = (running - at_half) / running;
  const bool flat_pass = std::isfinite(running) && flat_var < kPlateauTolerance;

  const ConeProfile prof(s.theta, s.grid, s.eta);
  const StripSolver solver(prof, s.strip, s.so);
  const Cancellation c = cancellation_quantity(solver, s.phi);

  const int n = s.grid.size();
  Table spec{"spectrum", {"zeta", "Q", "G_B", "G_V", "dB", "dV"}, std::vector<RealVec>(6)};
  const std::array<const RealVec*, 5> parts{&c.Q, &c.G_B, &c.G_V, &c.dB, &c.dV};
  std::vector<Spectrum> sp;
  for (const RealVec* p : parts) sp.push_back(to_spectrum(GridFn::from_real(s.grid, *p)));
  for (int q = 1; q < n / 2; ++q) {
    spec.data[0].push_back(s.grid.frequency(q));
    for (int k = 0; k < 5; ++k)
      spec.data[k + 1].push_back(
          std::sqrt(std::norm(sp[k].coeffs()[q]) + std::norm(sp[k].coeffs()[n - q])));
  }

  Report r;
  r.tables.push_back(std::move(flat));
  r.tables.push_back(std::move(spec));
  nlohmann::json slopes = nlohmann::json::object();
  for (const auto& [k, v] : c.report.slopes) slopes[k] = num(v);
  r.metrics = {{"theta_star", s.theta.theta_star},
               {"flat_sup", running},
               {"flat_plateau_variation", flat_var},
               {"flat_pass", flat_pass},
               {"decay_report",
                {{"slopes", slopes}, {"gain", num(c.report.gain)}, {"pass", c.report.pass}}},
               {"required_gain", kCancellationGain},
               {"runtime_s", seconds_since(t0)}};
  r.pass = flat_pass && c.report.pass;
  return r;
}

Report run_stokes(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  const Setup s = make_setup(cfg);
  const int n = s.grid.size();

  RealVec ms;
  for (int m = 0; m <= 8; ++m) ms.push_back(m);
  const StokesCoeffs small = stokes_coefficients(s.theta, ms, 2, s.p);
  Table at{"a_table", {"m", "a0", "a1", "a2", "a3", "g", "ratio_rel_error"}, std::vector<RealVec>(7)};
  double ratio_err = 0.0;
  for (size_t i = 0; i < ms.size(); ++i) {
    const double g = flat_symbol(ms[i], s.theta.theta_star, s.p);
    const double e = std::abs(small.a[1][i] / small.a[0][i] - g) / std::abs(g);
    ratio_err = std::max(ratio_err, e);
    at.data[0].push_back(ms[i]);
    for (int k = 0; k < 4; ++k) at.data[k + 1].push_back(small.a[k][i]);
    at.data[5].push_back(g);
    at.data[6].push_back(e);
  }

  // eps is the size of the perturbation: the shape is eta_tilde scaled to unit sup norm
  const double sup_eta = sup_norm(s.eta);
  if (sup_eta == 0.0) throw DomainError("stokes consistency needs a nonzero eta_tilde shape");
  RealVec shape(s.eta);
  for (double& v : shape) v /= sup_eta;
  const StokesCoeffs sc = stokes_coefficients(s.theta, s.grid, 2, s.p);
  const RealVec G1 = stokes_g_ell(sc, s.grid, shape, 1, s.phi);
  const RealVec G2 = stokes_g_ell(sc, s.grid, shape, 2, s.phi);
  const std::array<double, 3> eps{0.02, 0.01, 0.005};
  // D(eps) - D(0) on n_y and 2 n_y, then Richardson in dy
  std::array<std::array<RealVec, 3>, 2> diff;
  for (int level = 0; level < 2; ++level) {
    const StripGrid sg(s.grid, s.strip.n_y() << level);
    const RealVec D0 =
        StripSolver(ConeProfile::flat(s.theta, s.grid), sg, s.so).dn(s.phi).g_of_phi;
    for (int k = 0; k < 3; ++k) {
      RealVec e(shape);
      for (double& v : e) v *= eps[k];
      diff[level][k] = minus(StripSolver(ConeProfile(s.theta, s.grid, e), sg, s.so).dn(s.phi).g_of_phi, D0);
    }
  }
  const double phi_norm = std::max(l2_norm(s.grid, s.phi), 1e-300);
  RealVec lx, ly, ly_raw;
  Table ct{"consistency", {"eps", "error", "error_raw"}, std::vector<RealVec>(3)};
  for (int k = 0; k < 3; ++k) {
    RealVec d(n), d_raw(n);
    for (int i = 0; i < n; ++i) {
      const double series = eps[k] * G1[i] + eps[k] * eps[k] * G2[i];
      const double rich = (4.0 * diff[1][k][i] - diff[0][k][i]) / 3.0;
      d[i] = series - rich;
      d_raw[i] = series - diff[1][k][i];
    }
    const double err = l2_norm(s.grid, d) / phi_norm, raw = l2_norm(s.grid, d_raw) / phi_norm;
    lx.push_back(std::log(eps[k]));
    ly.push_back(std::log(err));
    ly_raw.push_back(std::log(raw));
    ct.data[0].push_back(eps[k]);
    ct.data[1].push_back(err);
    ct.data[2].push_back(raw);
  }
  const double slope = fit_slope(lx, ly);
  Report r;
  r.tables.push_back(std::move(at));
  r.tables.push_back(std::move(ct));
  r.metrics = {{"theta_star", s.theta.theta_star},
               {"ratio_max_rel_error", ratio_err},
               {"ratio_tolerance", cfg.tol_stokes_ratio},
               {"consistency_slope", num(slope)},
               {"consistency_slope_raw", num(fit_slope(lx, ly_raw))},
               {"n_y_levels", {s.strip.n_y(), 2 * s.strip.n_y()}},
               {"runtime_s", seconds_since(t0)}};
  r.pass = ratio_err <= cfg.tol_stokes_ratio && std::abs(slope - 3.0) <= 0.5;
  return r;
}

Report run_equilibrium(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  const Setup s = make_setup(cfg);
  const double c_star = taylor_constant(s.theta, cfg.kappa, cfg.epsilon, s.p);
  PhysicalParams pp{cfg.kappa, cfg.rho, cfg.epsilon, cfg.C ? *cfg.C : c_star};
  const int n = s.grid.size();

  const SurfaceTheta eq(ConeProfile::flat(s.theta, s.grid));
  const ZakharovRHS z = zakharov_rhs(eq, RealVec(n, 0.0), pp, s.strip);
  double rel = 0.0, theta_abs = 0.0;
  for (int i = 0; i < n; ++i) {
    rel = std::max(rel, std::abs(z.rhs_psi[i]) / z.term_scale[i]);
    theta_abs = std::max(theta_abs, std::abs(z.rhs_theta[i]));
  }

  const SurfaceTheta surf(ConeProfile(s.theta, s.grid, s.eta));
  const RealVec psi = psi_from_phi(s.grid, s.phi);
  const ZakharovRHS zg = zakharov_rhs(surf, psi, pp, s.strip);
  const ElectricField ef = electric_functional(surf, pp, s.strip);

  Report r;
  r.tables.push_back({"taylor",
                      {"r", "Theta", "H", "E2", "rhsTheta", "rhsPsi"},
                      {surf.r(), surf.theta(), zg.H, zg.E2, zg.rhs_theta, zg.rhs_psi}});
  r.metrics = {{"theta_star", s.theta.theta_star},
               {"C_star", c_star},
               {"C", pp.C},
               {"P1_half", legendre_half(s.theta.theta_star, s.p).P1},
               {"max_rel_rhs_psi", rel},
               {"max_abs_rhs_theta", theta_abs},
               {"tolerance", cfg.tol_equilibrium},
               {"surface_edge_decay", ef.edge_decay},
               {"runtime_s", seconds_since(t0)}};
  r.pass = rel <= cfg.tol_equilibrium && theta_abs == 0.0;
  return r;
}

Report run_norms(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  const Setup s = make_setup(cfg);
  const int n = s.grid.size();
  const GridFn f = GridFn::from_real(s.grid, s.phi);
  const PullbackNorms pb = pullback_norm_check(s.grid, push_to_r(f), cfg.norms_m);
  const double pb_rel = std::abs(pb.lhs - pb.rhs) / std::max(pb.lhs, 1e-300);

  // smooth random function from the seed
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal;
  std::vector<cplx> c(n, 0.0);
  const int kmax = n / 4;
  for (int k = 0; k < kmax; ++k) {
    const double w = std::exp(-std::pow(4.0 * k / kmax, 2));
    const cplx v(normal(rng) * w, k == 0 ? 0.0 : normal(rng) * w);
    c[k] = v;
    if (k > 0) c[n - k] = std::conj(v);
  }
  const RealVec u = to_gridfn(Spectrum(s.grid, std::move(c))).real_values(1e-8);
  const RealVec back = pull_to_sigma(s.grid, push_to_r(GridFn::from_real(s.grid, u))).real_values(1e-8);
  const double su = std::max(sup_norm(u), 1e-300);
  const double round_trip = sup_norm(minus(back, u)) / su;
  const double unknown_map = sup_norm(minus(phi_from_psi(s.grid, psi_from_phi(s.grid, u)), u)) / su;

  const SobolevFunctionals sf = sobolev_functionals(ConeProfile(s.theta, s.grid, s.eta), cfg.norms_s);
  Report r;
  r.metrics = {{"m", cfg.norms_m},
               {"pullback_lhs", pb.lhs},
               {"pullback_rhs", pb.rhs},
               {"pullback_rel_diff", pb_rel},
               {"equivalence_constant", pullback_equivalence_constant(cfg.norms_m)},
               {"round_trip_error", round_trip},
               {"unknown_map_error", unknown_map},
               {"s", cfg.norms_s},
               {"U_s", sf.U_s},
               {"l", sf.l},
               {"seed", cfg.seed},
               {"runtime_s", seconds_since(t0)}};
  const bool pb_ok = cfg.norms_m == 1 ? pb_rel <= cfg.tol_pullback
                                      : pb.rhs <= pullback_equivalence_constant(cfg.norms_m) * pb.lhs;
  r.pass = pb_ok && round_trip <= cfg.tol_roundtrip && unknown_map <= cfg.tol_roundtrip;
  return r;
}

using Runner = Report (*)(const RunConfig&);

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> m{
      {"angle", run_angle},           {"symbol", run_symbol},
      {"extend", run_extend},         {"solve", run_solve},
      {"bounds", run_bounds},         {"shape-check", run_shape_check},
      {"cancel-check", run_cancel_check}, {"stokes", run_stokes},
      {"equilibrium", run_equilibrium},   {"norms", run_norms}};
  return m;
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names{"angle",       "symbol",       "extend", "solve",
                                              "bounds",      "shape-check",  "cancel-check",
                                              "stokes",      "equilibrium",  "norms"};
  return names;
}

Report run_subcommand(const std::string& name, const RunConfig& cfg) {
  const auto it = runners().find(name);
  if (it == runners().end()) throw ConfigError("unknown subcommand '" + name + "'");
  Report r = it->second(cfg);
  r.subcommand = name;
  r.config_hash = cfg.hash();
  return r;
}

}  // namespace conedn
