#include "gridcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

#include "errors.hpp"
#include "quadrature.hpp"

namespace conedn {

namespace {

Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> engine;
  return engine;
}

// sign (-1)^k of the phase exp(i zeta_k L)
double phase_sign(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

SigmaGrid::SigmaGrid(double half_length, int n_sigma) : L_(half_length), n_(n_sigma) {
  if (!(half_length > 0.0) || !std::isfinite(half_length))
    throw ConfigError("grid.L must be positive, got " + std::to_string(half_length));
  if (n_sigma < 8 || (n_sigma & (n_sigma - 1)) != 0)
    throw ConfigError("grid.n_sigma must be a power of two >= 8, got " + std::to_string(n_sigma));
}

double SigmaGrid::frequency(int q) const { return std::numbers::pi * wavenumber(q) / L_; }

double SigmaGrid::frequency_spacing() const { return std::numbers::pi / L_; }

RealVec SigmaGrid::nodes() const {
  RealVec out(n_);
  for (int j = 0; j < n_; ++j) out[j] = node(j);
  return out;
}

RealVec SigmaGrid::frequencies() const {
  RealVec out(n_);
  for (int q = 0; q < n_; ++q) out[q] = frequency(q);
  return out;
}

GridFn::GridFn(const SigmaGrid& grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_.size())
    throw ConfigError("GridFn length " + std::to_string(values_.size()) + " != n_sigma " +
                      std::to_string(grid_.size()));
}

GridFn GridFn::zeros(const SigmaGrid& grid) {
  return GridFn(grid, std::vector<cplx>(grid.size(), cplx(0.0)));
}

GridFn GridFn::from_real(const SigmaGrid& grid, const RealVec& values) {
  std::vector<cplx> v(values.begin(), values.end());
  return GridFn(grid, std::move(v));
}

GridFn GridFn::sample(const SigmaGrid& grid, const std::function<double(double)>& f) {
  RealVec v(grid.size());
  for (int j = 0; j < grid.size(); ++j) v[j] = f(grid.node(j));
  return from_real(grid, v);
}

RealVec GridFn::real_values(double tol) const {
  double sup = 0.0, imag = 0.0;
  for (const auto& z : values_) {
    sup = std::max(sup, std::abs(z));
    imag = std::max(imag, std::abs(z.imag()));
  }
  if (imag > tol * std::max(sup, 1.0))
    throw EvaluationError("grid function expected real, imaginary part " + std::to_string(imag));
  RealVec out(values_.size());
  for (size_t j = 0; j < values_.size(); ++j) out[j] = values_[j].real();
  return out;
}

Spectrum::Spectrum(const SigmaGrid& grid, std::vector<cplx> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != grid_.size())
    throw ConfigError("Spectrum length " + std::to_string(coeffs_.size()) + " != n_sigma " +
                      std::to_string(grid_.size()));
}

Spectrum to_spectrum(const GridFn& f) {
  const SigmaGrid& g = f.grid();
  const int n = g.size();
  std::vector<cplx> out;
  fft_engine().fwd(out, f.values());
  const double scale = std::sqrt(2.0 * g.half_length()) / n;
  for (int q = 0; q < n; ++q) out[q] *= scale * phase_sign(g.wavenumber(q));
  return Spectrum(g, std::move(out));
}

GridFn to_gridfn(const Spectrum& s) {
  const SigmaGrid& g = s.grid();
  const int n = g.size();
  std::vector<cplx> c(s.coeffs());
  const double scale = n / std::sqrt(2.0 * g.half_length());
  for (int q = 0; q < n; ++q) c[q] *= scale * phase_sign(g.wavenumber(q));
  std::vector<cplx> out;
  fft_engine().inv(out, c);  // Eigen's inverse includes the 1/n factor
  return GridFn(g, std::move(out));
}

double l2_norm(const GridFn& f) { return sobolev_norm(f, 0.0); }

double sobolev_norm(const GridFn& f, double s) {
  if (s < -4.0 || s > 8.0) throw DomainError("Sobolev index outside [-4, 8]");
  const Spectrum sp = to_spectrum(f);
  const SigmaGrid& g = f.grid();
  double acc = 0.0;
  for (int q = 0; q < g.size(); ++q) {
    const double z = g.frequency(q);
    acc += std::pow(1.0 + z * z, s) * std::norm(sp.coeffs()[q]);
  }
  return std::sqrt(acc);
}

GridFn apply_multiplier(const GridFn& f, const std::function<cplx(double)>& symbol) {
  const SigmaGrid& g = f.grid();
  Spectrum sp = to_spectrum(f);
  std::vector<cplx> c = sp.coeffs();
  for (int q = 0; q < g.size(); ++q) {
    const double z = g.frequency(q);
    const cplx m = symbol(z);
    if (!std::isfinite(m.real()) || !std::isfinite(m.imag()))
      throw EvaluationError("non-finite symbol value at zeta = " + std::to_string(z));
    c[q] *= m;
  }
  return to_gridfn(Spectrum(g, std::move(c)));
}

RealVec apply_real_symbol(const SigmaGrid& grid, const RealVec& f, const RealVec& symbol) {
  const int n = grid.size();
  if (static_cast<int>(f.size()) != n || static_cast<int>(symbol.size()) != n)
    throw ConfigError("length mismatch in multiplier application");
  std::vector<cplx> in(f.begin(), f.end()), c, out;
  fft_engine().fwd(c, in);
  for (int q = 0; q < n; ++q) c[q] *= symbol[q];
  fft_engine().inv(out, c);
  RealVec r(n);
  for (int j = 0; j < n; ++j) r[j] = out[j].real();
  return r;
}

RealVec d_sigma(const SigmaGrid& grid, const RealVec& f, int order) {
  const int n = grid.size();
  if (static_cast<int>(f.size()) != n) throw ConfigError("length mismatch in d_sigma");
  std::vector<cplx> in(f.begin(), f.end()), c, out;
  fft_engine().fwd(c, in);
  for (int q = 0; q < n; ++q) {
    if (order % 2 == 1 && q == n / 2) {
      c[q] = 0.0;
      continue;
    }
    c[q] *= std::pow(cplx(0.0, grid.frequency(q)), order);
  }
  fft_engine().inv(out, c);
  RealVec r(n);
  for (int j = 0; j < n; ++j) r[j] = out[j].real();
  return r;
}

double l2_norm(const SigmaGrid& grid, const RealVec& f) {
  double acc = 0.0;
  for (double v : f) acc += v * v;
  return std::sqrt(acc * grid.spacing());
}

double sobolev_norm(const SigmaGrid& grid, const RealVec& f, double s) {
  return sobolev_norm(GridFn::from_real(grid, f), s);
}

double sup_norm(const RealVec& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

double spectral_interpolate(const GridFn& f, double sigma) {
  const SigmaGrid& g = f.grid();
  const Spectrum sp = to_spectrum(f);
  const int n = g.size();
  const double norm = 1.0 / std::sqrt(2.0 * g.half_length());
  cplx acc = 0.0;
  for (int q = 0; q < n; ++q) {
    // split the Nyquist mode symmetrically so real data interpolates to real values
    if (q == n / 2) {
      const double z = g.frequency(q);
      acc += norm * sp.coeffs()[q] * std::cos(z * sigma);
      continue;
    }
    acc += norm * sp.coeffs()[q] * std::exp(cplx(0.0, g.frequency(q) * sigma));
  }
  return acc.real();
}

GridFn pull_to_sigma(const SigmaGrid& grid, const std::function<double(double)>& F) {
  return GridFn::sample(grid, [&](double s) { return F(std::exp(-s)); });
}

std::function<double(double)> push_to_r(const GridFn& f) {
  return [f](double r) { return spectral_interpolate(f, -std::log(r)); };
}

namespace {

// k-th derivative by central differences with a three-level Richardson table.
double richardson_derivative(const std::function<double(double)>& F, double x, int k, double h) {
  auto central = [&](double step) {
    double acc = 0.0, binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      acc += sign * binom * F(x + (0.5 * k - j) * step);
      binom = binom * (k - j) / (j + 1);
    }
    return acc / std::pow(step, k);
  };
  double t0 = central(h), t1 = central(h / 2), t2 = central(h / 4);
  const double r01 = (4.0 * t1 - t0) / 3.0;
  const double r12 = (4.0 * t2 - t1) / 3.0;
  return (16.0 * r12 - r01) / 15.0;
}

}  // namespace

PullbackNorms pullback_norm_check(const SigmaGrid& grid, const std::function<double(double)>& F,
                                  int m) {
  if (m < 1 || m > 3) throw DomainError("pullback order must be 1, 2 or 3");
  PullbackNorms out;

  const GridFn f = pull_to_sigma(grid, F);
  const Spectrum sp = to_spectrum(f);
  double lhs = 0.0;
  for (int q = 0; q < grid.size(); ++q) {
    const double z = grid.frequency(q);
    double w = 0.0;
    for (int k = 0; k <= m; ++k) w += std::pow(z, 2 * k);
    lhs += w * std::norm(sp.coeffs()[q]);
  }
  out.lhs = std::sqrt(lhs);

  // r-side: Gauss-Legendre panels of constant ratio on [e^-L, e^L]
  const double L = grid.half_length();
  const int panels = static_cast<int>(std::ceil(8.0 * L));
  const double ratio = std::exp(2.0 * L / panels);
  double rhs = 0.0, a = std::exp(-L);
  for (int p = 0; p < panels; ++p) {
    const double b = a * ratio;
    rhs += gauss_legendre(a, b, [&](double r) {
      double acc = F(r) * F(r) / r;
      for (int k = 1; k <= m; ++k) {
        const double d = richardson_derivative(F, r, k, 0.02 * r);
        acc += std::pow(r, 2 * k - 1) * d * d;
      }
      return acc;
    });
    a = b;
  }
  out.rhs = std::sqrt(rhs);
  return out;
}

BellConstants bell_constants(int m_max) {
  auto table = [m_max](const std::vector<double>& x) {
    // B[n][k] = sum_{i=1}^{n-k+1} C(n-1, i-1) x_i B[n-i][k-1]
    std::vector<std::vector<double>> B(m_max + 1, std::vector<double>(m_max + 1, 0.0));
    B[0][0] = 1.0;
    for (int n = 1; n <= m_max; ++n)
      for (int k = 1; k <= n; ++k) {
        double acc = 0.0, binom = 1.0;
        for (int i = 1; i <= n - k + 1; ++i) {
          acc += binom * x[i] * B[n - i][k - 1];
          binom = binom * (n - i) / i;
        }
        B[n][k] = acc;
      }
    return B;
  };
  std::vector<double> ones(m_max + 2, 1.0), facts(m_max + 2, 1.0);
  for (int i = 2; i <= m_max + 1; ++i) facts[i] = facts[i - 1] * (i - 1);  // x_i = (i-1)!
  BellConstants out;
  out.c = table(ones);
  out.c_tilde = table(facts);
  return out;
}

double pullback_equivalence_constant(int m) {
  const BellConstants b = bell_constants(m);
  double s1 = 0.0, s2 = 0.0;
  for (int j = 0; j <= m; ++j)
    for (int k = 0; k <= j; ++k) {
      s1 += b.c[j][k] * b.c[j][k];
      s2 += b.c_tilde[j][k] * b.c_tilde[j][k];
    }
  return std::sqrt(std::max(s1, s2));
}

}  // namespace conedn
