#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "gridcore.hpp"

namespace conedn {

// A real function of sigma described by a few parameters.
//   gaussian:  A exp(-((s - c)/w)^2) cos(f s)
//   bump:      A exp(1 - 1/(1 - ((s - c)/w)^2)) on |s - c| < w
//   mode:      A cos(f s), f snapped to the nearest grid frequency
//   algebraic: spectrum (1 + (w zeta)^2)^(-decay) shifted to c, scaled to sup = |A|
struct FunctionSpec {
  std::string kind = "gaussian";
  double amplitude = 1.0;
  double width = 1.0;
  double frequency = 0.0;
  double center = 0.0;
  double decay = 2.0;

  void validate(const std::string& name) const;
  RealVec sample(const SigmaGrid& grid) const;
};

struct RunConfig {
  double L = 16.0;
  int n_sigma = 256;
  int n_y = 128;
  std::optional<double> theta_star;  // empty: Taylor angle

  FunctionSpec eta_tilde{"gaussian", 0.1, 1.0, 0.0, 0.0, 2.0};
  FunctionSpec phi{"gaussian", 1.0, 1.5, 2.0, 0.0, 2.0};
  FunctionSpec h{"gaussian", 1.0, 2.0, 0.0, 0.0, 2.0};

  double tol_angle = 1e-12;
  double tol_series = 1e-14;
  double tol_quad = 1e-12;
  double tol_solver = 1e-12;
  double tol_shape = 1e-3;
  double tol_flat_dy2 = 1.0;  // solve: flat error <= tol_flat_dy2 * dy^2
  double tol_stokes_ratio = 1e-6;
  double tol_equilibrium = 1e-10;
  double tol_pullback = 1e-6;
  double tol_roundtrip = 1e-12;

  int solver_max_iterations = 400;
  int solver_restart = 60;

  double shape_eps = 1e-3;
  double bounds_zeta_max = 100.0;
  int bounds_n_geometric = 64;
  double norms_s = 3.0;
  int norms_m = 1;

  double kappa = 1.0;
  double rho = 1.0;
  double epsilon = 1.0;
  std::optional<double> C;  // empty: Taylor constant

  std::string output_dir = "out";
  std::uint64_t seed = 0;

  // Dotted key assignment, e.g. set("grid.n_y", "64"). Throws ConfigError.
  void set(const std::string& key, const std::string& value);
  void validate() const;

  // Every key with its canonical value, sorted.
  std::map<std::string, std::string> canonical() const;
  // FNV-1a 64 over the canonical dump, as 16 hex digits.
  std::string hash() const;
};

RunConfig load_config_file(const std::string& path);
RunConfig load_config_string(const std::string& text);

}  // namespace conedn
