#pragma once

#include <map>
#include <string>
#include <vector>

#include "conical_fn.hpp"
#include "flat_dn.hpp"
#include "strip_solver.hpp"

namespace conedn {

// d_eta G[eta](phi) . h from B, V and two solves on the profile.
RealVec shape_derivative(const StripSolver& solver, const RealVec& phi, const RealVec& h);
RealVec shape_derivative(const ConeProfile& profile, const RealVec& phi, const RealVec& h,
                         const StripGrid& grid);

// sin(eta) dG.h + h cos(eta) G phi, and the right-hand side of the cot-free form.
struct CotFreeForm {
  RealVec lhs;
  RealVec rhs;
};
CotFreeForm cot_free_form(const StripSolver& solver, const RealVec& phi, const RealVec& h);

double omega_fn(double theta);  // (theta cos theta - sin theta) / theta^2

// d_eta A . h on faces/cells and d_eta gamma . h on cells, same layout as assemble_coefficients.
StripCoefficients d_eta_coefficients(const ConeProfile& profile, const RealVec& h,
                                     const StripGrid& grid);

// h y v_y/eta + v_sigma - eta_sigma y v_y/eta at cell centers; `phi` is the trace of v.
StripField varpi_field(const ConeProfile& profile, const StripField& v, const RealVec& phi,
                       const RealVec& h);

struct DecayReport {
  std::map<std::string, double> slopes;  // Q, G_B, G_V, dB, dV
  double gain = 0.0;
  bool pass = false;
};

constexpr double kCancellationGain = 0.8;

// Least-squares slope of log|c| against log<zeta> over [zeta_N/2, 0.9 zeta_N].
double spectral_tail_slope(const SigmaGrid& grid, const RealVec& f);

struct Cancellation {
  RealVec Q;
  RealVec G_B, G_V, dB, dV;
  DecayReport report;
};
Cancellation cancellation_quantity(const StripSolver& solver, const RealVec& phi);

struct StokesCoeffs {
  double theta_star;
  int order;
  RealVec m_values;
  // a[k][i] = d^k_theta k(m_i, theta*) for k <= order + 1 (G_l needs a_{l+1})
  std::vector<RealVec> a;
};

StokesCoeffs stokes_coefficients(const ConeAngle& theta_star, const RealVec& m_values, int order,
                                 const ConicalParams& p = {});
// Coefficients at |zeta_q| for every grid frequency (FFT order).
StokesCoeffs stokes_coefficients(const ConeAngle& theta_star, const SigmaGrid& grid, int order,
                                 const ConicalParams& p = {});

RealVec stokes_g_ell(const StokesCoeffs& coeffs, const SigmaGrid& grid, const RealVec& eta_tilde,
                     int ell, const RealVec& phi);

}  // namespace conedn
