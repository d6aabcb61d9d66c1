#include "taylor_cone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace conedn {

using std::numbers::pi;

void PhysicalParams::validate() const {
  if (!(kappa > 0.0)) throw ConfigError("kappa must be positive");
  if (!(rho > 0.0)) throw ConfigError("rho must be positive");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(C != 0.0) || !std::isfinite(C)) throw ConfigError("field constant C must be finite and nonzero");
}

RealVec r_nodes(const SigmaGrid& grid) {
  RealVec r(grid.size());
  for (int i = 0; i < grid.size(); ++i) r[i] = std::exp(-grid.node(i));
  return r;
}

SurfaceTheta::SurfaceTheta(ConeProfile profile)
    : profile_(std::move(profile)), r_(r_nodes(profile_.grid())), dtheta_dr_(r_.size()) {
  for (size_t i = 0; i < r_.size(); ++i) dtheta_dr_[i] = -profile_.eta_sigma()[i] / r_[i];
}

RealVec psi_from_phi(const SigmaGrid& grid, const RealVec& phi) {
  RealVec out(phi.size());
  for (int i = 0; i < grid.size(); ++i) out[i] = std::exp(0.5 * grid.node(i)) * phi[i];
  return out;
}

RealVec phi_from_psi(const SigmaGrid& grid, const RealVec& psi) {
  RealVec out(psi.size());
  for (int i = 0; i < grid.size(); ++i) out[i] = std::exp(-0.5 * grid.node(i)) * psi[i];
  return out;
}

RealVec convert_dn(const ConeProfile& profile, const DNResult& dn, const RealVec& phi) {
  const SigmaGrid& g = profile.grid();
  const auto& es = profile.eta_sigma();
  RealVec out(g.size());
  for (int i = 0; i < g.size(); ++i)
    out[i] = std::exp(2.5 * g.node(i)) * (dn.g_of_phi[i] - 0.5 * phi[i] * es[i]);
  return out;
}

RealVec mean_curvature(const SurfaceTheta& surface) {
  const ConeProfile& prof = surface.profile();
  const SigmaGrid& g = prof.grid();
  const int n = g.size();
  const auto& eta = prof.eta();
  const auto& es = prof.eta_sigma();
  RealVec S(n), q(n);
  for (int i = 0; i < n; ++i) {
    if (!(eta[i] > 0.0 && eta[i] < pi)) throw DomainError("Theta leaves (0, pi)");
    S[i] = std::sqrt(1.0 + es[i] * es[i]);
    q[i] = es[i] / (2.0 * S[i]);
  }
  const RealVec dq = d_sigma(g, q);
  RealVec H(n);
  for (int i = 0; i < n; ++i) {
    const double cot = std::cos(eta[i]) / std::sin(eta[i]);
    H[i] = std::exp(g.node(i)) * (dq[i] - es[i] / S[i] - cot / (2.0 * S[i]));
  }
  return H;
}

namespace {

// d/dr of psi = e^{sigma/2} phi, via d_sigma psi = e^{sigma/2}(phi_sigma + phi/2).
RealVec dr_from_phi(const SigmaGrid& g, const RealVec& phi) {
  const RealVec ps = d_sigma(g, phi);
  RealVec out(phi.size());
  for (int i = 0; i < g.size(); ++i)
    out[i] = -std::exp(1.5 * g.node(i)) * (ps[i] + 0.5 * phi[i]);
  return out;
}

}  // namespace

ElectricField electric_functional(const SurfaceTheta& surface, const PhysicalParams& params,
                                  const StripGrid& grid) {
  params.validate();
  const ConeProfile& prof = surface.profile();
  const SigmaGrid& g = prof.grid();
  const int n = g.size();
  const double p_star = legendre_half(prof.theta_star()).P;
  if (std::abs(p_star) > 1e-9)
    throw DomainError("exterior field needs P_{1/2}(-cos theta*) = 0; got " +
                      std::to_string(p_star) + " (use theta_star: auto)");
  const auto& eta = prof.eta();
  const auto& r = surface.r();
  const auto& dT = surface.dtheta_dr();

  ElectricField out;
  RealVec phi_ext(n), base(n);
  for (int i = 0; i < n; ++i) {
    const LegendreHalf lh = legendre_half(eta[i]);
    phi_ext[i] = -params.C * std::exp(-g.node(i)) * (lh.P - p_star);
    base[i] = params.C * lh.P1 / std::sqrt(r[i]);
  }
  out.xi = psi_from_phi(g, phi_ext);
  out.dxi_dr = dr_from_phi(g, phi_ext);
  out.edge_decay = std::max({std::abs(phi_ext.front()), std::abs(phi_ext.back()),
                             std::abs(prof.eta_tilde().front()), std::abs(prof.eta_tilde().back())});

  if (sup_norm(phi_ext) == 0.0) {
    out.G_xi.assign(n, 0.0);
  } else {
    const ConeProfile ext = prof.reflected();
    const StripSolver solver(ext, grid);
    out.G_xi = convert_dn(ext, solver.dn(phi_ext), phi_ext);
    for (double& v : out.G_xi) v = -v;
  }

  out.E2.resize(n);
  for (int i = 0; i < n; ++i) {
    const double ri = r[i], G = out.G_xi[i];
    const double t1 = out.xi[i] * out.xi[i] / (4.0 * ri * ri);
    const double t2 = ri * G + base[i];
    const double t3 = out.dxi_dr[i] - ri * ri * dT[i] * G;
    out.E2[i] = t1 + t2 * t2 - t3 * t3 / (1.0 + ri * ri * dT[i] * dT[i]);
  }
  return out;
}

ZakharovRHS zakharov_rhs(const SurfaceTheta& surface, const RealVec& psi,
                         const PhysicalParams& params, const StripGrid& grid) {
  params.validate();
  const ConeProfile& prof = surface.profile();
  const SigmaGrid& g = prof.grid();
  const int n = g.size();
  if (static_cast<int>(psi.size()) != n) throw ConfigError("psi length does not match n_sigma");
  const RealVec phi = phi_from_psi(g, psi);

  ZakharovRHS out;
  if (sup_norm(phi) == 0.0) {
    out.rhs_theta.assign(n, 0.0);
  } else {
    const StripSolver solver(prof, grid);
    out.rhs_theta = convert_dn(prof, solver.dn(phi), phi);
  }
  const RealVec dpsi = dr_from_phi(g, phi);
  out.H = mean_curvature(surface);
  out.E2 = electric_functional(surface, params, grid).E2;

  const auto& r = surface.r();
  const auto& dT = surface.dtheta_dr();
  out.rhs_psi.resize(n);
  out.term_scale.resize(n);
  for (int i = 0; i < n; ++i) {
    const double a = -0.5 * dpsi[i] * dpsi[i];
    const double m = r[i] * dT[i] * dpsi[i] + r[i] * out.rhs_theta[i];
    const double b = m * m / (2.0 * (1.0 + r[i] * r[i] * dT[i] * dT[i]));
    const double c = params.kappa / params.rho * out.H[i];
    const double d = params.epsilon / (2.0 * params.rho) * out.E2[i];
    out.rhs_psi[i] = a + b + c + d;
    out.term_scale[i] = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  }
  return out;
}

double taylor_constant(const ConeAngle& theta_star, double kappa, double epsilon,
                       const ConicalParams& p) {
  if (!(kappa > 0.0 && epsilon > 0.0)) throw ConfigError("kappa and epsilon must be positive");
  const double t = theta_star.theta_star;
  if (!(t < 0.5 * pi)) throw DomainError("Taylor constant needs theta* < pi/2");
  const double P1 = legendre_half(t, p).P1;
  return -std::sqrt(kappa * std::cos(t) / std::sin(t)) / (std::sqrt(epsilon) * P1);
}

}  // namespace conedn
