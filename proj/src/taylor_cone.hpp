#pragma once

#include "conical_fn.hpp"
#include "strip_solver.hpp"

namespace conedn {

struct PhysicalParams {
  double kappa = 1.0;
  double rho = 1.0;
  double epsilon = 1.0;
  double C = -1.0;
  void validate() const;
};

// Theta(r) = eta(-ln r) sampled on r_j = exp(-sigma_j).
class SurfaceTheta {
 public:
  explicit SurfaceTheta(ConeProfile profile);
  const ConeProfile& profile() const { return profile_; }
  const RealVec& r() const { return r_; }
  const RealVec& theta() const { return profile_.eta(); }
  const RealVec& dtheta_dr() const { return dtheta_dr_; }

 private:
  ConeProfile profile_;
  RealVec r_, dtheta_dr_;
};

RealVec r_nodes(const SigmaGrid& grid);
RealVec psi_from_phi(const SigmaGrid& grid, const RealVec& phi);  // psi = e^{sigma/2} phi
RealVec phi_from_psi(const SigmaGrid& grid, const RealVec& psi);

// Physical DN trace on the log grid: e^{5 sigma/2} (G[eta] phi - phi eta_sigma / 2).
RealVec convert_dn(const ConeProfile& profile, const DNResult& dn, const RealVec& phi);

RealVec mean_curvature(const SurfaceTheta& surface);

struct ElectricField {
  RealVec xi;       // -C sqrt(r) P_{1/2}(-cos Theta)
  RealVec dxi_dr;
  RealVec G_xi;     // exterior DN of xi
  RealVec E2;       // |grad phi|^2 on the surface
  double edge_decay = 0.0;  // max |phi_ext| and |eta_tilde| at the two ends of the sigma window
};

// Requires |P_{1/2}(-cos theta*)| <= 1e-9 so that xi decays with eta_tilde.
ElectricField electric_functional(const SurfaceTheta& surface, const PhysicalParams& params,
                                  const StripGrid& grid);

struct ZakharovRHS {
  RealVec rhs_theta;
  RealVec rhs_psi;
  RealVec H;
  RealVec E2;
  // largest of the four rhs_psi terms, pointwise
  RealVec term_scale;
};

ZakharovRHS zakharov_rhs(const SurfaceTheta& surface, const RealVec& psi,
                         const PhysicalParams& params, const StripGrid& grid);

// C* = -sqrt(kappa cot theta*) / (sqrt(epsilon) P^1_{1/2}(-cos theta*)).
double taylor_constant(const ConeAngle& theta_star, double kappa, double epsilon,
                       const ConicalParams& p = {});

}  // namespace conedn
