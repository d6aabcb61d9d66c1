#pragma once

#include <array>

namespace conedn {

struct ConicalParams {
  double series_tol = 1e-14;
  int series_max_terms = 400;
  double quad_tol = 1e-12;
  // |zeta| * theta above which the leading Bessel form is treated as valid
  // (used for branch comparisons; evaluation itself always integrates).
  double asym_threshold = 30.0;

  void validate() const;
};

struct ConeAngle {
  double theta_star;
  explicit ConeAngle(double theta);
};

// theta-derivatives of k(zeta, theta): d^m k / dtheta^m = d[m] * exp(log_scale).
struct ConicalJet {
  double log_scale = 0.0;
  std::array<double, 5> d{};
  int order = 0;

  double value(int m) const;
};

ConicalJet conical_jet(double zeta, double theta, int order, const ConicalParams& p = {});
double conical_p(double zeta, double theta, const ConicalParams& p = {});
double conical_p_dtheta(double zeta, double theta, int m, const ConicalParams& p = {});

// d^m/dtheta^m k(zeta, theta) / k(zeta, theta_ref) without overflow.
double conical_ratio(double zeta, double theta, double theta_ref, int m,
                     const ConicalParams& p = {});

// Power series sum_n prod_{k<=n}((k-1/2)^2+zeta^2)/(n!)^2 sin^{2n}(theta/2) with
// theta-derivatives; throws EvaluationError when the tail does not settle.
ConicalJet conical_series_jet(double zeta, double theta, int order, const ConicalParams& p = {});

// Leading large-zeta form I0(zeta theta)/sqrt(sinc theta).
double conical_p_asymptotic(double zeta, double theta);

double gamma_half_abs2(int m, double zeta);

// exp(-x) I_m(x), m in 0..4, x >= 0.
double bessel_i_scaled(int m, double x);
// exp(-x) d^k/dx^k I_0(x), k in 0..4.
double bessel_i0_derivative_scaled(int k, double x);

struct LegendreHalf {
  double P;   // P_{1/2}(-cos theta)
  double P1;  // P^1_{1/2}(-cos theta) = d/dtheta P_{1/2}(-cos theta), no (-1)^m phase
};
LegendreHalf legendre_half(double theta, const ConicalParams& p = {});

ConeAngle taylor_angle(double tol = 1e-12, const ConicalParams& p = {});

}  // namespace conedn
