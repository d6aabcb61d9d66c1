#include "conical_fn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "jet.hpp"
#include "quadrature.hpp"

namespace conedn {

using std::numbers::pi;

void ConicalParams::validate() const {
  if (!(series_tol > 0.0) || !(quad_tol > 0.0) || !(asym_threshold > 0.0))
    throw ConfigError("conical tolerances must be positive");
  if (series_max_terms < 32) throw ConfigError("series_max_terms must be >= 32");
}

ConeAngle::ConeAngle(double theta) : theta_star(theta) {
  if (!(theta > 0.0 && theta < pi))
    throw DomainError("cone angle must lie in (0, pi), got " + std::to_string(theta));
}

double ConicalJet::value(int m) const {
  if (m < 0 || m > order) throw InternalError("conical jet order exceeded");
  return d[m] * std::exp(log_scale);
}

namespace {

void check_theta(double theta) {
  if (!(theta > 0.0 && theta < pi))
    throw DomainError("theta must lie in (0, pi), got " + std::to_string(theta));
}

// Mehler integral after phi = theta (1 - t^2), scaled by exp(-|zeta| theta):
//   (2/pi) int_0^1 sqrt(2 theta / (sin(theta (1 - t^2/2)) sinc(theta t^2 / 2)))
//          * (exp(-a t^2) + exp(-a (2 - t^2))) / 2 dt,   a = |zeta| theta.
template <int N>
Jet<N> mehler_integrand(double t, const Jet<N>& th, double az) {
  const double t2 = t * t;
  const Jet<N> S = sin(th * (1.0 - 0.5 * t2));
  const Jet<N> s = sinc(th * (0.5 * t2));
  const Jet<N> base = sqrt(2.0 * th / (S * s));
  const Jet<N> w = 0.5 * (exp(th * (-az * t2)) + exp(th * (-az * (2.0 - t2))));
  return base * w;
}

std::vector<double> mehler_breaks(double az, double theta) {
  const double width = 1.0 / std::sqrt(std::max(az * theta, 1.0));
  const double scale = std::min(width, std::sqrt(pi - theta));
  std::vector<double> b{0.0};
  for (double x = scale / 8.0; x < 1.0; x *= 2.0) b.push_back(x);
  b.push_back(1.0);
  return b;
}

template <int N, unsigned Q>
Jet<N> mehler_sum(const std::vector<double>& breaks, const Jet<N>& th, double az) {
  Jet<N> acc;
  for (size_t i = 0; i + 1 < breaks.size(); ++i)
    acc += gauss_legendre<Q>(breaks[i], breaks[i + 1],
                             [&](double t) { return mehler_integrand<N>(t, th, az); });
  return acc;
}

template <int N>
ConicalJet mehler_jet(double zeta, double theta, int order, const ConicalParams& p) {
  const double az = std::abs(zeta);
  const Jet<N> th = Jet<N>::variable(theta);
  const auto breaks = mehler_breaks(az, theta);
  const Jet<N> E = mehler_sum<N, 30>(breaks, th, az);
  const Jet<N> E_check = mehler_sum<N, 20>(breaks, th, az);
  const double residual = std::abs(E.c[0] - E_check.c[0]);
  if (!(residual <= p.quad_tol * std::abs(E.c[0])) || !std::isfinite(E.c[0]))
    throw EvaluationError("Mehler quadrature did not converge at zeta=" + std::to_string(zeta) +
                          ", theta=" + std::to_string(theta) +
                          ", achieved residual " + std::to_string(residual));

  // k = exp(az theta) E: multiply by the Taylor series of exp(az eps)
  ConicalJet out;
  out.order = order;
  out.log_scale = az * theta;
  double fact_m = 1.0;
  for (int m = 0; m <= order; ++m) {
    if (m > 0) fact_m *= m;
    double acc = 0.0, pw = 1.0, fact = 1.0;
    for (int j = m; j >= 0; --j) {
      acc += pw / fact * E.c[j];
      const int step = m - j + 1;
      pw *= az;
      fact *= step;
    }
    out.d[m] = (2.0 / pi) * acc * fact_m;
  }
  return out;
}

double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

}  // namespace

ConicalJet conical_jet(double zeta, double theta, int order, const ConicalParams& p) {
  check_theta(theta);
  if (order < 0 || order > 4) throw DomainError("derivative order must be in 0..4");
  if (order <= 1) return mehler_jet<1>(zeta, theta, order, p);
  if (order == 2) return mehler_jet<2>(zeta, theta, order, p);
  return mehler_jet<4>(zeta, theta, order, p);
}

double conical_p(double zeta, double theta, const ConicalParams& p) {
  return conical_jet(zeta, theta, 0, p).value(0);
}

double conical_p_dtheta(double zeta, double theta, int m, const ConicalParams& p) {
  if (m < 1 || m > 4) throw DomainError("derivative order must be in 1..4");
  return conical_jet(zeta, theta, m, p).value(m);
}

double conical_ratio(double zeta, double theta, double theta_ref, int m, const ConicalParams& p) {
  const ConicalJet a = conical_jet(zeta, theta, m, p);
  const ConicalJet b = conical_jet(zeta, theta_ref, 0, p);
  return a.d[m] / b.d[0] * std::exp(a.log_scale - b.log_scale);
}

ConicalJet conical_series_jet(double zeta, double theta, int order, const ConicalParams& p) {
  check_theta(theta);
  if (order < 0 || order > 4) throw DomainError("derivative order must be in 0..4");
  using J = Jet<4>;
  const J th = J::variable(theta);
  const J s = 0.5 * (1.0 - cos(th));  // sin^2(theta/2)
  const double z2 = zeta * zeta;
  J term(1.0), sum(1.0);
  bool settled = false;
  for (int n = 1; n <= p.series_max_terms; ++n) {
    term = term * s * (((n - 0.5) * (n - 0.5) + z2) / (double(n) * n));
    sum += term;
    // term ratios tend to sin^2(theta/2); derivative coefficients carry up to n^4 more
    const double r = std::max(((n + 0.5) * (n + 0.5) + z2) / ((n + 1.0) * (n + 1.0)), 1.0) *
                     s.c[0] * std::pow(1.0 + 1.0 / n, 4);
    double tmax = 0.0;
    for (double v : term.c) tmax = std::max(tmax, std::abs(v));
    if (r < 1.0 && tmax * r / (1.0 - r) <= p.series_tol * std::abs(sum.c[0])) {
      settled = true;
      break;
    }
  }
  if (!settled || !std::isfinite(sum.c[0]))
    throw EvaluationError("conical power series did not settle within " +
                          std::to_string(p.series_max_terms) + " terms at zeta=" +
                          std::to_string(zeta) + "; use the quadrature symbol route");
  ConicalJet out;
  out.order = order;
  for (int m = 0; m <= order; ++m) out.d[m] = sum.derivative(m);
  return out;
}

double conical_p_asymptotic(double zeta, double theta) {
  check_theta(theta);
  const double x = std::abs(zeta) * theta;
  return bessel_i_scaled(0, x) * std::exp(x) / std::sqrt(sinc(theta));
}

double gamma_half_abs2(int m, double zeta) {
  if (m < 0) throw DomainError("gamma_half_abs2 requires m >= 0");
  double lg = std::log(pi) - log_cosh(pi * zeta);
  for (int k = 1; k <= m; ++k) lg += std::log((k - 0.5) * (k - 0.5) + zeta * zeta);
  return std::exp(lg);
}

double bessel_i_scaled(int m, double x) {
  if (m < 0 || m > 4) throw DomainError("Bessel order must be in 0..4");
  if (!(x >= 0.0)) throw DomainError("Bessel argument must be >= 0");
  if (x < 500.0) return std::exp(-x) * std::cyl_bessel_i(static_cast<double>(m), x);
  // Hankel expansion; the terms decrease monotonically for x >= 500 and m <= 4.
  const double mu = 4.0 * m * m;
  double term = 1.0, acc = 1.0;
  for (int k = 1; k < 12; ++k) {
    term *= -(mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
    acc += term;
  }
  return acc / std::sqrt(2.0 * pi * x);
}

double bessel_i0_derivative_scaled(int k, double x) {
  switch (k) {
    case 0: return bessel_i_scaled(0, x);
    case 1: return bessel_i_scaled(1, x);
    case 2: return 0.5 * (bessel_i_scaled(0, x) + bessel_i_scaled(2, x));
    case 3: return 0.25 * (3.0 * bessel_i_scaled(1, x) + bessel_i_scaled(3, x));
    case 4:
      return 0.125 *
             (3.0 * bessel_i_scaled(0, x) + 4.0 * bessel_i_scaled(2, x) + bessel_i_scaled(4, x));
    default: throw DomainError("Bessel derivative order must be in 0..4");
  }
}

namespace {

// 2F1(a, b; c; z) by direct summation; |z| < 1. The term ratio is bounded by
// max(current ratio, |z|), which gives the tail estimate.
double hypergeometric_2f1(double a, double b, double c, double z, int max_terms,
                          const ConicalParams& p) {
  double term = 1.0, acc = 1.0;
  for (int n = 0; n < max_terms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    acc += term;
    const double r = std::max(
        std::abs((a + n + 1) * (b + n + 1) / ((c + n + 1) * (n + 2.0)) * z), std::abs(z));
    if (r < 1.0 && std::abs(term) * r / (1.0 - r) <= p.series_tol * std::abs(acc)) return acc;
  }
  throw EvaluationError("hypergeometric series for the half-degree Legendre function did not "
                        "converge (argument " + std::to_string(z) + ")");
}

}  // namespace

LegendreHalf legendre_half(double theta, const ConicalParams& p) {
  check_theta(theta);
  const double z = 0.5 * (1.0 + std::cos(theta));  // (1 - x)/2 with x = -cos theta
  // z -> 1 as theta -> 0 (logarithmic end): allow enough terms for theta >= 1e-3
  const int max_terms = std::max(p.series_max_terms, 4000000);
  LegendreHalf out;
  out.P = hypergeometric_2f1(-0.5, 1.5, 1.0, z, max_terms, p);
  out.P1 = 0.375 * std::sin(theta) * hypergeometric_2f1(0.5, 2.5, 2.0, z, max_terms, p);
  return out;
}

ConeAngle taylor_angle(double tol, const ConicalParams& p) {
  if (!(tol > 0.0 && tol <= 1e-3)) throw DomainError("taylor_angle tolerance must be in (0, 1e-3]");
  double a = 0.2 * pi, b = 0.35 * pi;
  double fa = legendre_half(a, p).P;
  const double fb = legendre_half(b, p).P;
  if (fa * fb > 0.0)
    throw InternalError("no sign change of P_{1/2}(-cos theta) on (0.2 pi, 0.35 pi)");
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    const double fm = legendre_half(m, p).P;
    if (fm == 0.0) return ConeAngle(m);
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return ConeAngle(0.5 * (a + b));
}

}  // namespace conedn
