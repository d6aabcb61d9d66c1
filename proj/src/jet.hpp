#pragma once

#include <array>
#include <cmath>

namespace conedn {

// Truncated Taylor series in one variable: c[k] = f^(k)(x0) / k!.
template <int N>
struct Jet {
  std::array<double, N + 1> c{};

  Jet() = default;
  Jet(double v) { c[0] = v; }  // NOLINT(google-explicit-constructor)

  static Jet variable(double x0) {
    Jet j(x0);
    if constexpr (N >= 1) j.c[1] = 1.0;
    return j;
  }

  double value() const { return c[0]; }
  double derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c[k] * f;
  }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= N; ++k) c[k] += o.c[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= N; ++k) c[k] -= o.c[k];
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }
};

template <int N>
Jet<N> operator+(Jet<N> a, const Jet<N>& b) { return a += b; }
template <int N>
Jet<N> operator-(Jet<N> a, const Jet<N>& b) { return a -= b; }
template <int N>
Jet<N> operator-(Jet<N> a) {
  for (auto& v : a.c) v = -v;
  return a;
}
template <int N>
Jet<N> operator*(Jet<N> a, double s) { return a *= s; }
template <int N>
Jet<N> operator*(double s, Jet<N> a) { return a *= s; }
template <int N>
Jet<N> operator+(Jet<N> a, double s) {
  a.c[0] += s;
  return a;
}
template <int N>
Jet<N> operator+(double s, Jet<N> a) { return a + s; }
template <int N>
Jet<N> operator-(Jet<N> a, double s) {
  a.c[0] -= s;
  return a;
}
template <int N>
Jet<N> operator-(double s, const Jet<N>& a) { return -a + s; }

template <int N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  for (int k = 0; k <= N; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += a.c[j] * b.c[k - j];
    r.c[k] = acc;
  }
  return r;
}

template <int N>
Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> q;
  for (int k = 0; k <= N; ++k) {
    double acc = a.c[k];
    for (int j = 1; j <= k; ++j) acc -= b.c[j] * q.c[k - j];
    q.c[k] = acc / b.c[0];
  }
  return q;
}

template <int N>
Jet<N> operator/(const Jet<N>& a, double s) { return a * (1.0 / s); }

template <int N>
Jet<N> operator/(double s, const Jet<N>& b) { return Jet<N>(s) / b; }

template <int N>
Jet<N> exp(const Jet<N>& a) {
  Jet<N> e;
  e.c[0] = std::exp(a.c[0]);
  for (int k = 1; k <= N; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * a.c[j] * e.c[k - j];
    e.c[k] = acc / k;
  }
  return e;
}

template <int N>
Jet<N> sqrt(const Jet<N>& a) {
  Jet<N> r;
  r.c[0] = std::sqrt(a.c[0]);
  for (int k = 1; k <= N; ++k) {
    double acc = a.c[k];
    for (int j = 1; j < k; ++j) acc -= r.c[j] * r.c[k - j];
    r.c[k] = acc / (2.0 * r.c[0]);
  }
  return r;
}

template <int N>
void sincos(const Jet<N>& a, Jet<N>& s, Jet<N>& co) {
  s = Jet<N>();
  co = Jet<N>();
  s.c[0] = std::sin(a.c[0]);
  co.c[0] = std::cos(a.c[0]);
  for (int k = 1; k <= N; ++k) {
    double as = 0.0, ac = 0.0;
    for (int j = 1; j <= k; ++j) {
      as += j * a.c[j] * co.c[k - j];
      ac -= j * a.c[j] * s.c[k - j];
    }
    s.c[k] = as / k;
    co.c[k] = ac / k;
  }
}

template <int N>
Jet<N> sin(const Jet<N>& a) {
  Jet<N> s, co;
  sincos(a, s, co);
  return s;
}

template <int N>
Jet<N> cos(const Jet<N>& a) {
  Jet<N> s, co;
  sincos(a, s, co);
  return co;
}

// sin(x)/x; a power series near the origin avoids the 0/0 quotient.
template <int N>
Jet<N> sinc(const Jet<N>& a) {
  if (std::abs(a.c[0]) > 0.5) return sin(a) / a;
  const Jet<N> x2 = a * a;
  Jet<N> term(1.0), acc(1.0);
  for (int n = 1; n < 14; ++n) {
    term = term * x2 * (-1.0 / ((2.0 * n) * (2.0 * n + 1.0)));
    acc += term;
  }
  return acc;
}

inline double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
  return std::sin(x) / x;
}

}  // namespace conedn
