#include "flat_dn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "errors.hpp"
#include "quadrature.hpp"

namespace conedn {

SymbolTable build_symbol_table(const SigmaGrid& grid, const ConeAngle& theta_star,
                               const ConicalParams& p) {
  p.validate();
  SymbolTable t{grid, theta_star.theta_star, p, RealVec(grid.size()), RealVec(grid.size()),
                RealVec(grid.size())};
  const int n = grid.size();
  for (int q = 0; q <= n / 2; ++q) {
    const double z = std::abs(grid.frequency(q));
    ConicalJet j;
    try {
      j = conical_jet(z, t.theta_star, 1, p);
    } catch (const Error& e) {
      throw EvaluationError("symbol table at zeta=" + std::to_string(z) + ": " + e.what());
    }
    const int mirror = (n - q) % n;
    for (int idx : {q, mirror}) {
      t.g[idx] = j.d[1] / j.d[0];
      t.k_star[idx] = j.d[0];
      t.k_star_log[idx] = j.log_scale;
    }
  }
  return t;
}

double flat_symbol(double zeta, double theta_star, const ConicalParams& p) {
  const ConicalJet j = conical_jet(std::abs(zeta), theta_star, 1, p);
  return j.d[1] / j.d[0];
}

RealVec dn_flat(const RealVec& phi, const SymbolTable& table) {
  return apply_real_symbol(table.grid, phi, table.g);
}

GridFn dn_flat(const GridFn& phi, const SymbolTable& table) {
  if (!(phi.grid() == table.grid)) throw ConfigError("grid mismatch between phi and symbol table");
  Spectrum sp = to_spectrum(phi);
  std::vector<cplx> c = sp.coeffs();
  for (size_t q = 0; q < c.size(); ++q) c[q] *= table.g[q];
  return to_gridfn(Spectrum(table.grid, std::move(c)));
}

StripField extend_flat(const GridFn& phi, const RealVec& theta_samples, const SymbolTable& table,
                       int dtheta_order) {
  if (!(phi.grid() == table.grid)) throw ConfigError("grid mismatch between phi and symbol table");
  const SigmaGrid& g = table.grid;
  const int n = g.size();
  const Spectrum sp = to_spectrum(phi);
  RealVec y(theta_samples.size());
  RealVec values(static_cast<size_t>(n) * theta_samples.size());
  for (size_t r = 0; r < theta_samples.size(); ++r) {
    const double th = theta_samples[r];
    if (!(th > 0.0 && th <= table.theta_star))
      throw DomainError("extension angle " + std::to_string(th) + " outside (0, theta*]");
    y[r] = th / table.theta_star;
    std::vector<cplx> c = sp.coeffs();
    for (int q = 0; q <= n / 2; ++q) {
      double ratio;
      if (th == table.theta_star && dtheta_order == 0) {
        ratio = 1.0;
      } else {
        const ConicalJet j = conical_jet(std::abs(g.frequency(q)), th, dtheta_order, table.params);
        ratio = j.d[dtheta_order] / table.k_star[q] * std::exp(j.log_scale - table.k_star_log[q]);
      }
      c[q] *= ratio;
      if (q != 0 && q != n / 2) c[n - q] *= ratio;
    }
    const GridFn row = to_gridfn(Spectrum(g, std::move(c)));
    for (int i = 0; i < n; ++i) values[static_cast<size_t>(i) * theta_samples.size() + r] =
        row.values()[i].real();
  }
  return StripField(g, std::move(y), std::move(values));
}

namespace {

struct Quad4 {
  std::array<double, 4> a{};
  Quad4(double v = 0.0) { a.fill(v); }  // NOLINT(google-explicit-constructor)
  Quad4& operator+=(const Quad4& o) {
    for (int m = 0; m < 4; ++m) a[m] += o.a[m];
    return *this;
  }
  friend Quad4 operator+(Quad4 x, const Quad4& y) { return x += y; }
  friend Quad4 operator*(Quad4 x, double s) {
    for (auto& v : x.a) v *= s;
    return x;
  }
};

// Panels on (0, theta*] graded geometrically toward theta*, where the kernel
// ratio concentrates at large zeta.
std::vector<double> bound_breaks(double zeta, double theta_star) {
  const double width = std::min(theta_star, 1.0 / std::max(2.0 * zeta, 1.0)) / 4.0;
  std::vector<double> gaps{0.0};
  for (double d = width; d < theta_star; d *= 2.0) gaps.push_back(d);
  gaps.push_back(theta_star);
  std::vector<double> b;
  for (auto it = gaps.rbegin(); it != gaps.rend(); ++it) b.push_back(theta_star - *it);
  return b;
}

}  // namespace

std::array<double, 4> kernel_bound_integrals(double zeta, double theta_star,
                                             const ConicalParams& p) {
  const double z = std::abs(zeta);
  const ConicalJet ref = conical_jet(z, theta_star, 0, p);
  const auto breaks = bound_breaks(z, theta_star);
  std::array<double, 4> acc{};
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    const auto part = gauss_legendre<20>(breaks[i], breaks[i + 1], [&](double th) {
      const ConicalJet j = conical_jet(z, th, 3, p);
      const double scale = std::exp(j.log_scale - ref.log_scale) / ref.d[0];
      Quad4 v;
      for (int m = 0; m < 4; ++m) {
        const double r = j.d[m] * scale;
        v.a[m] = r * r * (m >= 2 ? std::pow(th, 2 * m) : 1.0);
      }
      return v;
    });
    for (int m = 0; m < 4; ++m) acc[m] += part.a[m];
  }
  const double br = std::sqrt(1.0 + z * z);
  std::array<double, 4> S;
  for (int m = 0; m < 4; ++m) S[m] = acc[m] * std::pow(br, m == 0 ? 1.0 : 1.0 - 2.0 * m);
  return S;
}

double bessel_bound_integral(int k, double x) {
  if (x == 0.0) return k == 0 ? 1.0 : 0.0;
  const double i0 = bessel_i_scaled(0, x);
  const double width = 1.0 / (2.0 * x + 1.0) / 4.0;
  std::vector<double> gaps{0.0};
  for (double d = width; d < 1.0; d *= 2.0) gaps.push_back(d);
  gaps.push_back(1.0);
  double acc = 0.0;
  for (size_t i = gaps.size() - 1; i > 0; --i) {
    acc += gauss_legendre<20>(1.0 - gaps[i], 1.0 - gaps[i - 1], [&](double y) {
      const double r = std::exp(-x * (1.0 - y)) * bessel_i0_derivative_scaled(k, y * x) / i0;
      return r * r;
    });
  }
  return acc;
}

BesselBoundsReport verify_bessel_bounds(double x_max, int n_x) {
  BesselBoundsReport rep;
  for (int i = 0; i < n_x; ++i) {
    const double x = x_max * i / (n_x - 1);
    for (int k = 0; k <= 4; ++k) {
      const double v = bessel_bound_integral(k, x);
      rep.sup_integral = std::max(rep.sup_integral, v);
      if (x * v > rep.sup_weighted) {
        rep.sup_weighted = x * v;
        rep.argsup_x = x;
        rep.argsup_k = k;
      }
    }
  }
  rep.pass = rep.sup_integral <= 1.0 + 1e-9 && rep.sup_weighted <= 3.0 + 1e-9;
  return rep;
}

KernelBoundsReport verify_kernel_bounds(const SymbolTable& table, double zeta_max,
                                        int n_geometric) {
  if (!(zeta_max > 0.0 && zeta_max <= 500.0)) throw DomainError("zeta_max must lie in (0, 500]");
  std::vector<double> zetas{0.0};
  const double z_lo = std::min(0.1, zeta_max / 2.0);
  for (int i = 0; i < n_geometric - 1; ++i)
    zetas.push_back(z_lo * std::pow(zeta_max / z_lo, static_cast<double>(i) / (n_geometric - 2)));
  for (int q = 1; q < table.grid.size() / 2; ++q)
    if (table.grid.frequency(q) <= zeta_max) zetas.push_back(table.grid.frequency(q));
  std::sort(zetas.begin(), zetas.end());
  zetas.erase(std::unique(zetas.begin(), zetas.end()), zetas.end());

  KernelBoundsReport rep;
  for (double z : zetas) {
    try {
      rep.rows.push_back({z, kernel_bound_integrals(z, table.theta_star, table.params)});
    } catch (const Error& e) {
      throw EvaluationError("kernel bound quadrature at zeta=" + std::to_string(z) + ": " +
                            e.what());
    }
  }
  for (int m = 0; m < 4; ++m) {
    double running = 0.0, at_half = 0.0;
    for (const auto& row : rep.rows) {
      if (!std::isfinite(row.S[m])) throw EvaluationError("non-finite kernel bound integral");
      if (row.S[m] > running) {
        running = row.S[m];
        rep.argsup[m] = row.zeta;
      }
      if (row.zeta <= zeta_max / 2.0) at_half = running;
    }
    rep.sup[m] = running;
    rep.plateau_variation[m] = (running - at_half) / running;
  }
  rep.bessel = verify_bessel_bounds();
  rep.pass = rep.bessel.pass;
  for (int m = 0; m < 4; ++m) rep.pass = rep.pass && rep.plateau_variation[m] < kPlateauTolerance;
  return rep;
}

}  // namespace conedn
