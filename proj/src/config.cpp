#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "errors.hpp"
#include "strip_field.hpp"

namespace conedn {

namespace {

double parse_real(const std::string& key, const std::string& v) {
  size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size() || !std::isfinite(out))
    throw ConfigError(key + ": expected a finite number, got '" + v + "'");
  return out;
}

long long parse_int(const std::string& key, const std::string& v) {
  size_t pos = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size()) throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  size_t pos = 0;
  unsigned long long out = 0;
  try {
    if (!v.empty() && v[0] != '-') out = std::stoull(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size())
    throw ConfigError(key + ": expected an unsigned integer, got '" + v + "'");
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

Setter real_field(double RunConfig::*m) {
  return [m](RunConfig& c, const std::string& k, const std::string& v) { c.*m = parse_real(k, v); };
}

Setter int_field(int RunConfig::*m) {
  return [m](RunConfig& c, const std::string& k, const std::string& v) {
    const long long x = parse_int(k, v);
    if (x < -1000000000LL || x > 1000000000LL) throw ConfigError(k + ": out of range");
    c.*m = static_cast<int>(x);
  };
}

Setter auto_or_real(std::optional<double> RunConfig::*m) {
  return [m](RunConfig& c, const std::string& k, const std::string& v) {
    if (v == "auto")
      (c.*m).reset();
    else
      c.*m = parse_real(k, v);
  };
}

void add_function_keys(std::map<std::string, Setter>& keys, const std::string& prefix,
                       FunctionSpec RunConfig::*m) {
  keys[prefix + ".kind"] = [m](RunConfig& c, const std::string& k, const std::string& v) {
    if (v != "gaussian" && v != "bump" && v != "mode" && v != "algebraic")
      throw ConfigError(k + ": kind must be gaussian, bump, mode or algebraic, got '" + v + "'");
    (c.*m).kind = v;
  };
  auto field = [m](double FunctionSpec::*f) -> Setter {
    return [m, f](RunConfig& c, const std::string& k, const std::string& v) {
      (c.*m).*f = parse_real(k, v);
    };
  };
  keys[prefix + ".amplitude"] = field(&FunctionSpec::amplitude);
  keys[prefix + ".width"] = field(&FunctionSpec::width);
  keys[prefix + ".frequency"] = field(&FunctionSpec::frequency);
  keys[prefix + ".center"] = field(&FunctionSpec::center);
  keys[prefix + ".decay"] = field(&FunctionSpec::decay);
}

const std::map<std::string, Setter>& key_table() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> k;
    k["grid.L"] = real_field(&RunConfig::L);
    k["grid.n_sigma"] = int_field(&RunConfig::n_sigma);
    k["grid.n_y"] = int_field(&RunConfig::n_y);
    k["cone.theta_star"] = auto_or_real(&RunConfig::theta_star);
    add_function_keys(k, "cone.eta_tilde", &RunConfig::eta_tilde);
    add_function_keys(k, "phi", &RunConfig::phi);
    add_function_keys(k, "h", &RunConfig::h);
    k["tol.angle"] = real_field(&RunConfig::tol_angle);
    k["tol.series"] = real_field(&RunConfig::tol_series);
    k["tol.quad"] = real_field(&RunConfig::tol_quad);
    k["tol.solver"] = real_field(&RunConfig::tol_solver);
    k["tol.shape"] = real_field(&RunConfig::tol_shape);
    k["tol.flat_dy2"] = real_field(&RunConfig::tol_flat_dy2);
    k["tol.stokes_ratio"] = real_field(&RunConfig::tol_stokes_ratio);
    k["tol.equilibrium"] = real_field(&RunConfig::tol_equilibrium);
    k["tol.pullback"] = real_field(&RunConfig::tol_pullback);
    k["tol.roundtrip"] = real_field(&RunConfig::tol_roundtrip);
    k["solver.max_iterations"] = int_field(&RunConfig::solver_max_iterations);
    k["solver.restart"] = int_field(&RunConfig::solver_restart);
    k["shape.eps"] = real_field(&RunConfig::shape_eps);
    k["bounds.zeta_max"] = real_field(&RunConfig::bounds_zeta_max);
    k["bounds.n_geometric"] = int_field(&RunConfig::bounds_n_geometric);
    k["norms.s"] = real_field(&RunConfig::norms_s);
    k["norms.m"] = int_field(&RunConfig::norms_m);
    k["physics.kappa"] = real_field(&RunConfig::kappa);
    k["physics.rho"] = real_field(&RunConfig::rho);
    k["physics.epsilon"] = real_field(&RunConfig::epsilon);
    k["physics.C"] = auto_or_real(&RunConfig::C);
    k["output.dir"] = [](RunConfig& c, const std::string&, const std::string& v) {
      c.output_dir = v;
    };
    k["seed"] = [](RunConfig& c, const std::string& key, const std::string& v) {
      c.seed = parse_u64(key, v);
    };
    return k;
  }();
  return table;
}

void flatten(const YAML::Node& node, const std::string& prefix, RunConfig& cfg) {
  if (node.IsMap()) {
    for (const auto& kv : node) {
      const std::string key = kv.first.as<std::string>();
      flatten(kv.second, prefix.empty() ? key : prefix + "." + key, cfg);
    }
    return;
  }
  const auto mark = node.Mark();
  const std::string where = "line " + std::to_string(mark.line + 1) + ", column " +
                            std::to_string(mark.column + 1) + ": ";
  if (!node.IsScalar()) throw ConfigError(where + prefix + ": expected a scalar value");
  try {
    cfg.set(prefix, node.Scalar());
  } catch (const ConfigError& e) {
    throw ConfigError(where + e.what());
  }
}

RunConfig from_yaml(const YAML::Node& root) {
  RunConfig cfg;
  if (root.IsNull()) return cfg;
  if (!root.IsMap()) throw ConfigError("configuration must be a mapping of keys");
  flatten(root, "", cfg);
  cfg.validate();
  return cfg;
}

}  // namespace

void FunctionSpec::validate(const std::string& name) const {
  if (!std::isfinite(amplitude)) throw ConfigError(name + ".amplitude must be finite");
  if (!(width > 0.0)) throw ConfigError(name + ".width must be positive");
  if (kind == "algebraic" && !(decay > 0.5)) throw ConfigError(name + ".decay must exceed 1/2");
}

RealVec FunctionSpec::sample(const SigmaGrid& grid) const {
  const int n = grid.size();
  RealVec out(n, 0.0);
  if (kind == "gaussian") {
    for (int i = 0; i < n; ++i) {
      const double s = grid.node(i), u = (s - center) / width;
      out[i] = amplitude * std::exp(-u * u) * std::cos(frequency * s);
    }
  } else if (kind == "bump") {
    for (int i = 0; i < n; ++i) {
      const double u = (grid.node(i) - center) / width;
      if (std::abs(u) < 1.0) out[i] = amplitude * std::exp(1.0 - 1.0 / (1.0 - u * u));
    }
  } else if (kind == "mode") {
    const double dz = grid.frequency_spacing();
    const double f = std::round(frequency / dz) * dz;
    for (int i = 0; i < n; ++i) out[i] = amplitude * std::cos(f * grid.node(i));
  } else if (kind == "algebraic") {
    std::vector<cplx> c(n);
    for (int q = 0; q < n; ++q) {
      const double z = grid.frequency(q);
      c[q] = std::pow(1.0 + width * width * z * z, -decay) * std::polar(1.0, -z * center);
    }
    if (n % 2 == 0) c[n / 2] = c[n / 2].real();
    out = to_gridfn(Spectrum(grid, std::move(c))).real_values(1e-8);
    const double s = sup_norm(out);
    for (double& v : out) v *= amplitude / s;
  } else {
    throw ConfigError("unknown function kind '" + kind + "'");
  }
  return out;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  const auto& t = key_table();
  const auto it = t.find(key);
  if (it == t.end()) throw ConfigError("unknown key '" + key + "'");
  it->second(*this, key, value);
}

void RunConfig::validate() const {
  if (!(L > 0.0)) throw ConfigError("grid.L must be positive");
  if (n_sigma < 8 || (n_sigma & (n_sigma - 1)) != 0)
    throw ConfigError("grid.n_sigma must be a power of two >= 8");
  if (n_y < 16) throw ConfigError("grid.n_y must be at least 16");
  if (theta_star && !(*theta_star > 0.0 && *theta_star < std::numbers::pi))
    throw ConfigError("cone.theta_star must lie in (0, pi)");
  eta_tilde.validate("cone.eta_tilde");
  phi.validate("phi");
  h.validate("h");
  for (double t : {tol_angle, tol_series, tol_quad, tol_solver, tol_shape, tol_flat_dy2,
                   tol_stokes_ratio, tol_equilibrium, tol_pullback, tol_roundtrip})
    if (!(t > 0.0)) throw ConfigError("tolerances must be positive");
  if (tol_angle > 1e-3) throw ConfigError("tol.angle must not exceed 1e-3");
  if (solver_max_iterations < 1 || solver_restart < 1)
    throw ConfigError("solver iteration limits must be positive");
  if (!(shape_eps > 0.0 && shape_eps < 0.1)) throw ConfigError("shape.eps must lie in (0, 0.1)");
  if (!(bounds_zeta_max > 0.0 && bounds_zeta_max <= 500.0))
    throw ConfigError("bounds.zeta_max must lie in (0, 500]");
  if (bounds_n_geometric < 3) throw ConfigError("bounds.n_geometric must be at least 3");
  if (norms_m < 1 || norms_m > 3) throw ConfigError("norms.m must be 1, 2 or 3");
  if (!(kappa > 0.0 && rho > 0.0 && epsilon > 0.0))
    throw ConfigError("physics.kappa, physics.rho and physics.epsilon must be positive");
  if (C && *C == 0.0) throw ConfigError("physics.C must be nonzero");
}

std::map<std::string, std::string> RunConfig::canonical() const {
  std::map<std::string, std::string> m;
  auto num = [](double v) { return format_double(v); };
  m["grid.L"] = num(L);
  m["grid.n_sigma"] = std::to_string(n_sigma);
  m["grid.n_y"] = std::to_string(n_y);
  m["cone.theta_star"] = theta_star ? num(*theta_star) : "auto";
  auto fn = [&](const std::string& p, const FunctionSpec& f) {
    m[p + ".kind"] = f.kind;
    m[p + ".amplitude"] = num(f.amplitude);
    m[p + ".width"] = num(f.width);
    m[p + ".frequency"] = num(f.frequency);
    m[p + ".center"] = num(f.center);
    m[p + ".decay"] = num(f.decay);
  };
  fn("cone.eta_tilde", eta_tilde);
  fn("phi", phi);
  fn("h", h);
  m["tol.angle"] = num(tol_angle);
  m["tol.series"] = num(tol_series);
  m["tol.quad"] = num(tol_quad);
  m["tol.solver"] = num(tol_solver);
  m["tol.shape"] = num(tol_shape);
  m["tol.flat_dy2"] = num(tol_flat_dy2);
  m["tol.stokes_ratio"] = num(tol_stokes_ratio);
  m["tol.equilibrium"] = num(tol_equilibrium);
  m["tol.pullback"] = num(tol_pullback);
  m["tol.roundtrip"] = num(tol_roundtrip);
  m["solver.max_iterations"] = std::to_string(solver_max_iterations);
  m["solver.restart"] = std::to_string(solver_restart);
  m["shape.eps"] = num(shape_eps);
  m["bounds.zeta_max"] = num(bounds_zeta_max);
  m["bounds.n_geometric"] = std::to_string(bounds_n_geometric);
  m["norms.s"] = num(norms_s);
  m["norms.m"] = std::to_string(norms_m);
  m["physics.kappa"] = num(kappa);
  m["physics.rho"] = num(rho);
  m["physics.epsilon"] = num(epsilon);
  m["physics.C"] = C ? num(*C) : "auto";
  m["output.dir"] = output_dir;
  m["seed"] = std::to_string(seed);
  return m;
}

std::string RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& [k, v] : canonical()) {
    if (k == "output.dir") continue;  // where results go does not change them
    for (unsigned char ch : k + "=" + v + "\n") {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return from_yaml(YAML::Load(ss.str()));
  } catch (const YAML::Exception& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

RunConfig load_config_string(const std::string& text) {
  try {
    return from_yaml(YAML::Load(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace conedn
