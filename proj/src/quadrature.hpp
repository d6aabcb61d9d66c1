#pragma once

#include <boost/math/quadrature/gauss.hpp>

namespace conedn {

// Fixed-order Gauss-Legendre rule on [a, b]; works for any result type that
// supports addition and scaling by double (scalars and jets).
template <unsigned N = 20, class F>
auto gauss_legendre(double a, double b, F&& f) {
  using rule = boost::math::quadrature::gauss<double, N>;
  const auto& x = rule::abscissa();
  const auto& w = rule::weights();
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  using R = decltype(f(mid));
  R acc = R(0.0);
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      acc += f(mid) * w[i];
      continue;
    }
    acc += (f(mid - half * x[i]) + f(mid + half * x[i])) * w[i];
  }
  return acc * half;
}

}  // namespace conedn
