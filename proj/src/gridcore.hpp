#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace conedn {

using cplx = std::complex<double>;
using RealVec = std::vector<double>;

// Uniform periodic grid on [-L, L). Spectral quantities are stored in FFT
// order: index q carries wavenumber k = q for q < n/2 and q - n otherwise.
class SigmaGrid {
 public:
  SigmaGrid(double half_length = 16.0, int n_sigma = 256);

  double half_length() const { return L_; }
  int size() const { return n_; }
  double spacing() const { return 2.0 * L_ / n_; }
  double node(int j) const { return -L_ + j * spacing(); }
  int wavenumber(int q) const { return q < n_ / 2 ? q : q - n_; }
  double frequency(int q) const;
  double frequency_spacing() const;
  RealVec nodes() const;
  RealVec frequencies() const;

  bool operator==(const SigmaGrid& o) const { return L_ == o.L_ && n_ == o.n_; }

 private:
  double L_;
  int n_;
};

class GridFn {
 public:
  GridFn(const SigmaGrid& grid, std::vector<cplx> values);
  static GridFn zeros(const SigmaGrid& grid);
  static GridFn from_real(const SigmaGrid& grid, const RealVec& values);
  static GridFn sample(const SigmaGrid& grid, const std::function<double(double)>& f);

  const SigmaGrid& grid() const { return grid_; }
  const std::vector<cplx>& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }

  // Real part; throws when an imaginary part exceeds tol relative to the sup norm.
  RealVec real_values(double tol = 1e-10) const;

 private:
  SigmaGrid grid_;
  std::vector<cplx> values_;
};

// Unitary convention: c_q = sqrt(2L)/n * sum_j f_j exp(-i zeta_q sigma_j), so
// sum_q |c_q|^2 = dsigma * sum_j |f_j|^2.
class Spectrum {
 public:
  Spectrum(const SigmaGrid& grid, std::vector<cplx> coeffs);

  const SigmaGrid& grid() const { return grid_; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }

 private:
  SigmaGrid grid_;
  std::vector<cplx> coeffs_;
};

Spectrum to_spectrum(const GridFn& f);
GridFn to_gridfn(const Spectrum& s);

double l2_norm(const GridFn& f);
double sobolev_norm(const GridFn& f, double s);

GridFn apply_multiplier(const GridFn& f, const std::function<cplx(double)>& symbol);

// Real-valued fast paths. Symbols are sampled in FFT order.
RealVec apply_real_symbol(const SigmaGrid& grid, const RealVec& f, const RealVec& symbol);
RealVec d_sigma(const SigmaGrid& grid, const RealVec& f, int order = 1);
double l2_norm(const SigmaGrid& grid, const RealVec& f);
double sobolev_norm(const SigmaGrid& grid, const RealVec& f, double s);
double sup_norm(const RealVec& f);

// Trigonometric interpolant of f evaluated off-grid.
double spectral_interpolate(const GridFn& f, double sigma);

// Change of variables r = exp(-sigma).
GridFn pull_to_sigma(const SigmaGrid& grid, const std::function<double(double)>& F);
std::function<double(double)> push_to_r(const GridFn& f);

struct PullbackNorms {
  double lhs = 0.0;  // (sum_{k<=m} int |d_sigma^k f|^2 dsigma)^(1/2)
  double rhs = 0.0;  // (sum_{k<=m} int r^(2k-1) |d_r^k F|^2 dr)^(1/2)
};

PullbackNorms pullback_norm_check(const SigmaGrid& grid, const std::function<double(double)>& F,
                                  int m);

// Partial Bell polynomials B_{m,k}(1,...,1) and B_{m,k}(0!,1!,...).
struct BellConstants {
  std::vector<std::vector<double>> c;        // c[m][k]
  std::vector<std::vector<double>> c_tilde;  // c_tilde[m][k]
};
BellConstants bell_constants(int m_max);
double pullback_equivalence_constant(int m);

}  // namespace conedn
