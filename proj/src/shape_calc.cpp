#include "shape_calc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "jet.hpp"

namespace conedn {

RealVec shape_derivative(const StripSolver& solver, const RealVec& phi, const RealVec& h) {
  const ConeProfile& prof = solver.profile();
  const SigmaGrid& g = prof.grid();
  const int n = g.size();
  if (static_cast<int>(h.size()) != n) throw ConfigError("h length does not match n_sigma");
  const DNResult dn = solver.dn(phi);
  RealVec w(n), u(n);
  for (int i = 0; i < n; ++i) {
    w[i] = h[i] * dn.B[i] + dn.V[i];
    u[i] = h[i] * dn.V[i] - dn.B[i];
  }
  const RealVec Gw = solver.dn(w).g_of_phi;
  const RealVec du = d_sigma(g, u);
  const auto& eta = prof.eta();
  const auto& es = prof.eta_sigma();
  RealVec out(n);
  for (int i = 0; i < n; ++i)
    out[i] = -Gw[i] - du[i] +
             (h[i] - es[i]) * (0.25 * phi[i] - dn.B[i] * std::cos(eta[i]) / std::sin(eta[i]));
  return out;
}

RealVec shape_derivative(const ConeProfile& profile, const RealVec& phi, const RealVec& h,
                         const StripGrid& grid) {
  return shape_derivative(StripSolver(profile, grid), phi, h);
}

CotFreeForm cot_free_form(const StripSolver& solver, const RealVec& phi, const RealVec& h) {
  const ConeProfile& prof = solver.profile();
  const SigmaGrid& g = prof.grid();
  const int n = g.size();
  const DNResult dn = solver.dn(phi);
  const RealVec dG = shape_derivative(solver, phi, h);
  const auto& eta = prof.eta();
  const auto& es = prof.eta_sigma();
  RealVec w(n), u(n);
  for (int i = 0; i < n; ++i) {
    w[i] = h[i] * dn.B[i] + dn.V[i];
    u[i] = (h[i] * dn.V[i] - dn.B[i]) * std::sin(eta[i]);
  }
  const RealVec Gw = solver.dn(w).g_of_phi;
  const RealVec du = d_sigma(g, u);
  CotFreeForm out{RealVec(n), RealVec(n)};
  for (int i = 0; i < n; ++i) {
    const double s = std::sin(eta[i]);
    out.lhs[i] = s * dG[i] + h[i] * std::cos(eta[i]) * dn.g_of_phi[i];
    out.rhs[i] = -s * Gw[i] - du[i] + s * (h[i] - es[i]) * 0.25 * phi[i];
  }
  return out;
}

double omega_fn(double theta) {
  if (std::abs(theta) < 1e-3) {
    const double t2 = theta * theta;
    return theta * (-1.0 / 3.0 + t2 / 30.0 - t2 * t2 / 840.0);
  }
  return (theta * std::cos(theta) - std::sin(theta)) / (theta * theta);
}

StripCoefficients d_eta_coefficients(const ConeProfile& profile, const RealVec& h,
                                     const StripGrid& grid) {
  const SigmaGrid& g = grid.sigma();
  const int n = g.size(), ny = grid.n_y();
  if (static_cast<int>(h.size()) != n) throw ConfigError("h length does not match n_sigma");
  const auto& eta = profile.eta();
  const auto& es = profile.eta_sigma();
  const RealVec hs = d_sigma(g, h);
  RealVec eh(n);
  for (int i = 0; i < n; ++i) eh[i] = eta[i] * h[i];
  const RealVec ehs = d_sigma(g, eh);

  StripCoefficients c;
  c.n_sigma = n;
  c.n_y = ny;
  c.a11_face.resize(static_cast<size_t>(ny + 1) * n);
  c.a12_face.resize(c.a11_face.size());
  c.a22_face.resize(c.a11_face.size());
  c.a11_cell.resize(static_cast<size_t>(ny) * n);
  c.a12_cell.resize(c.a11_cell.size());
  c.gamma_cell.resize(c.a11_cell.size());

  struct Entry {
    double a11, a12, a22;
  };
  auto dA = [&](double y, int i) {
    const double x = y * eta[i];
    const double w = y * y * h[i] * omega_fn(x);
    const double sc = y * sinc(x);
    return Entry{w * eta[i] * eta[i] + sc * 2.0 * eta[i] * h[i],
                 -w * y * eta[i] * es[i] - sc * y * ehs[i],
                 w * (1.0 + y * y * es[i] * es[i]) + sc * 2.0 * y * y * es[i] * hs[i]};
  };
  for (int f = 0; f <= ny; ++f)
    for (int i = 0; i < n; ++i) {
      const Entry e = dA(grid.face(f), i);
      const size_t k = static_cast<size_t>(f) * n + i;
      c.a11_face[k] = e.a11;
      c.a12_face[k] = e.a12;
      c.a22_face[k] = e.a22;
    }
  for (int j = 0; j < ny; ++j) {
    const double y = grid.center(j);
    for (int i = 0; i < n; ++i) {
      const Entry e = dA(y, i);
      const size_t k = static_cast<size_t>(j) * n + i;
      c.a11_cell[k] = e.a11;
      c.a12_cell[k] = e.a12;
      c.gamma_cell[k] = 0.25 * h[i] * (std::sin(y * eta[i]) + y * eta[i] * std::cos(y * eta[i]));
    }
  }
  return c;
}

StripField varpi_field(const ConeProfile& profile, const StripField& v, const RealVec& phi,
                       const RealVec& h) {
  const SigmaGrid& g = profile.grid();
  const int n = g.size(), ny = v.n_y();
  const double dy = 1.0 / ny;
  const auto& eta = profile.eta();
  const auto& es = profile.eta_sigma();
  StripField out = v;
  for (int j = 0; j < ny; ++j) {
    const RealVec col = v.column(j);
    const RealVec vs = d_sigma(g, col);
    const double y = v.y()[j];
    for (int i = 0; i < n; ++i) {
      const double below = (j == 0) ? v.at(i, 0) : v.at(i, j - 1);
      const double above = (j == ny - 1)
                               ? (8.0 * phi[i] - 6.0 * v.at(i, ny - 1) + v.at(i, ny - 2)) / 3.0
                               : v.at(i, j + 1);
      const double vy = (above - below) / (2.0 * dy);
      out.at(i, j) = (h[i] - es[i]) * y * vy / eta[i] + vs[i];
    }
  }
  return out;
}

double spectral_tail_slope(const SigmaGrid& grid, const RealVec& f) {
  const Spectrum sp = to_spectrum(GridFn::from_real(grid, f));
  const int n = grid.size();
  const double zN = grid.frequency(n / 2 - 1);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int q = 1; q < n / 2; ++q) {
    const double z = grid.frequency(q);
    if (z < 0.5 * zN || z > 0.9 * zN) continue;
    const double amp = std::sqrt(std::norm(sp.coeffs()[q]) + std::norm(sp.coeffs()[n - q]));
    if (!(amp > 0.0)) continue;
    const double x = 0.5 * std::log1p(z * z), yv = std::log(amp);
    sx += x;
    sy += yv;
    sxx += x * x;
    sxy += x * yv;
    ++cnt;
  }
  if (cnt < 3) throw EvaluationError("too few resolved frequencies for a tail slope fit");
  return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

Cancellation cancellation_quantity(const StripSolver& solver, const RealVec& phi) {
  const SigmaGrid& g = solver.profile().grid();
  const int n = g.size();
  const DNResult dn = solver.dn(phi);
  Cancellation c;
  c.G_B = solver.dn(dn.B).g_of_phi;
  c.G_V = solver.dn(dn.V).g_of_phi;
  c.dB = d_sigma(g, dn.B);
  c.dV = d_sigma(g, dn.V);
  c.Q.resize(n);
  for (int i = 0; i < n; ++i) c.Q[i] = c.G_B[i] + c.G_V[i] + c.dV[i] - c.dB[i];
  double phi_sup = sup_norm(phi);
  if (phi_sup == 0.0) {
    c.report.pass = true;
    return c;
  }
  auto& s = c.report.slopes;
  s["Q"] = spectral_tail_slope(g, c.Q);
  s["G_B"] = spectral_tail_slope(g, c.G_B);
  s["G_V"] = spectral_tail_slope(g, c.G_V);
  s["dB"] = spectral_tail_slope(g, c.dB);
  s["dV"] = spectral_tail_slope(g, c.dV);
  const double worst = std::max({s["G_B"], s["G_V"], s["dB"], s["dV"]});
  c.report.gain = worst - s["Q"];
  c.report.pass = c.report.gain >= kCancellationGain;
  return c;
}

StokesCoeffs stokes_coefficients(const ConeAngle& theta_star, const RealVec& m_values, int order,
                                 const ConicalParams& p) {
  if (order < 0 || order > 2) throw DomainError("Stokes order must be 0, 1 or 2");
  StokesCoeffs c{theta_star.theta_star, order, m_values,
                 std::vector<RealVec>(order + 2, RealVec(m_values.size()))};
  for (size_t i = 0; i < m_values.size(); ++i) {
    const ConicalJet j = conical_series_jet(m_values[i], theta_star.theta_star, order + 1, p);
    if (!(j.d[0] > 0.0)) throw EvaluationError("a_0 not positive");
    for (int k = 0; k <= order + 1; ++k) c.a[k][i] = j.d[k];
  }
  return c;
}

StokesCoeffs stokes_coefficients(const ConeAngle& theta_star, const SigmaGrid& grid, int order,
                                 const ConicalParams& p) {
  RealVec m(grid.size());
  for (int q = 0; q < grid.size(); ++q) m[q] = std::abs(grid.frequency(q));
  return stokes_coefficients(theta_star, m, order, p);
}

namespace {

struct StokesContext {
  const SigmaGrid& grid;
  const RealVec& eta;
  RealVec eta_s;
  std::vector<RealVec> r;  // a_k / a_0 in FFT order

  RealVec mult(int k, const RealVec& f) const { return apply_real_symbol(grid, f, r[k]); }

  RealVec G(int ell, const RealVec& phi) const {
    const int n = grid.size();
    if (ell == 0) return mult(1, phi);
    auto power = [&](int p) {
      RealVec e(n, 1.0);
      double fact = 1.0;
      for (int k = 2; k <= p; ++k) fact *= k;
      for (int i = 0; i < n; ++i) e[i] = std::pow(eta[i], p) / fact;
      return e;
    };
    RealVec out(n);
    const RealVec t1 = mult(ell + 1, phi);
    const RealVec t2 = d_sigma(grid, mult(ell - 1, phi));
    const RealVec pl = power(ell), pl1 = power(ell - 1);
    for (int i = 0; i < n; ++i) out[i] = pl[i] * t1[i] - eta_s[i] * pl1[i] * t2[i];
    for (int j = 0; j < ell; ++j) {
      const RealVec pw = power(ell - j);
      RealVec arg = mult(ell - j, phi);
      for (int i = 0; i < n; ++i) arg[i] *= pw[i];
      const RealVec gj = G(j, arg);
      for (int i = 0; i < n; ++i) out[i] -= gj[i];
    }
    return out;
  }
};

}  // namespace

RealVec stokes_g_ell(const StokesCoeffs& coeffs, const SigmaGrid& grid, const RealVec& eta_tilde,
                     int ell, const RealVec& phi) {
  if (ell < 0 || ell > coeffs.order) throw DomainError("Stokes term order exceeds coefficients");
  const int n = grid.size();
  if (static_cast<int>(coeffs.m_values.size()) != n)
    throw ConfigError("Stokes coefficients must be tabulated on the grid frequencies");
  StokesContext ctx{grid, eta_tilde, d_sigma(grid, eta_tilde), {}};
  for (int k = 0; k <= coeffs.order + 1; ++k) {
    RealVec r(n);
    for (int q = 0; q < n; ++q) r[q] = coeffs.a[k][q] / coeffs.a[0][q];
    ctx.r.push_back(std::move(r));
  }
  return ctx.G(ell, phi);
}

}  // namespace conedn
