#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <random>

#include "conical_fn.hpp"
#include "errors.hpp"
#include "flat_dn.hpp"
#include "oracles.hpp"

using namespace conedn;

namespace {

const double kTheta = 0.860274346749;

RealVec gauss_mode(const SigmaGrid& g, double w, double f, double c = 0.0) {
  RealVec v(g.size());
  for (int j = 0; j < g.size(); ++j) {
    const double s = g.node(j) - c;
    v[j] = std::exp(-s * s / (w * w)) * std::cos(f * s);
  }
  return v;
}

double dot(const RealVec& a, const RealVec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// d/dtheta P_{-1/2}(cos t) from dK/dk = E/(k(1-k^2)) - K/k, k = sin(t/2).
double oracle_dk0(double t) {
  const double k = std::sin(0.5 * t);
  double K, E;
  oracle::elliptic_ke(k, K, E);
  return 2.0 / std::numbers::pi * (E / (k * (1 - k * k)) - K / k) * 0.5 * std::cos(0.5 * t);
}

}  // namespace

class FlatDn : public ::testing::Test {
 protected:
  SigmaGrid grid{16.0, 256};
  SymbolTable table = build_symbol_table(grid, ConeAngle(kTheta));
};

TEST_F(FlatDn, ZeroFrequencySymbol) {
  EXPECT_NEAR(table.g[0], oracle_dk0(kTheta) / oracle::legendre_minus_half(kTheta), 1e-12);
  EXPECT_NEAR(flat_symbol(0.0, kTheta), table.g[0], 1e-15);
}

TEST_F(FlatDn, SymbolEvenAndFirstOrder) {
  const int n = grid.size();
  double lo = 1e300, hi = 0.0;
  for (int q = 1; q < n; ++q) {
    EXPECT_EQ(table.g[q], table.g[n - q]);
    const double z = grid.frequency(q);
    const double r = table.g[q] / std::sqrt(1 + z * z);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  // the lower end is set by g(0) ~ 0.126 at the Taylor angle
  EXPECT_GT(lo, 0.1);
  EXPECT_LT(hi, 1.2);
  EXPECT_NEAR(flat_symbol(-3.7, kTheta), flat_symbol(3.7, kTheta), 1e-15);
}

TEST_F(FlatDn, SymbolLargeFrequencyOffset) {
  // g(zeta) - zeta -> -cot(theta*)/2
  const double lim = -0.5 / std::tan(kTheta);
  const double e100 = flat_symbol(100.0, kTheta) - 100.0 - lim;
  const double e400 = flat_symbol(400.0, kTheta) - 400.0 - lim;
  EXPECT_LT(std::abs(e400), 0.3 * std::abs(e100));
  EXPECT_LT(std::abs(e400), 1e-3);
}

TEST_F(FlatDn, ModesAreEigenfunctions) {
  for (int q : {0, 3, 40}) {
    const double z = grid.frequency(q);
    RealVec phi(grid.size()), ref(grid.size());
    for (int j = 0; j < grid.size(); ++j) {
      phi[j] = std::cos(z * grid.node(j));
      ref[j] = flat_symbol(z, kTheta) * phi[j];
    }
    EXPECT_LT(oracle::max_abs_diff(dn_flat(phi, table), ref), 1e-11) << q;
  }
}

TEST_F(FlatDn, Symmetric) {
  const RealVec a = gauss_mode(grid, 1.0, 2.0, 0.5), b = gauss_mode(grid, 2.0, 0.3, -1.0);
  const double lhs = dot(dn_flat(a, table), b), rhs = dot(a, dn_flat(b, table));
  EXPECT_NEAR(lhs, rhs, 1e-10 * std::abs(lhs));
  EXPECT_GT(dot(dn_flat(a, table), a), 0.0);
}

TEST_F(FlatDn, ComplexAndRealPathsAgree) {
  const RealVec a = gauss_mode(grid, 1.3, 1.0);
  const RealVec r1 = dn_flat(a, table);
  const RealVec r2 = dn_flat(GridFn::from_real(grid, a), table).real_values();
  EXPECT_LT(oracle::max_abs_diff(r1, r2), 1e-13);
}

TEST_F(FlatDn, ExtensionOfConstant) {
  const GridFn c = GridFn::from_real(grid, RealVec(grid.size(), 2.5));
  const RealVec th{0.2, 0.5, kTheta};
  const StripField f = extend_flat(c, th, table);
  for (size_t r = 0; r < th.size(); ++r) {
    const double ref = 2.5 * oracle::legendre_minus_half(th[r]) / oracle::legendre_minus_half(kTheta);
    for (int i = 0; i < grid.size(); i += 37) EXPECT_NEAR(f.at(i, r), ref, 1e-12);
  }
  EXPECT_NEAR(f.y()[1], 0.5 / kTheta, 1e-15);
}

TEST_F(FlatDn, ExtensionTraceAndEquation) {
  const RealVec phi = gauss_mode(grid, 1.5, 2.0);
  const GridFn gf = GridFn::from_real(grid, phi);
  const StripField top = extend_flat(gf, {kTheta}, table);
  for (int i = 0; i < grid.size(); ++i) EXPECT_NEAR(top.at(i, 0), phi[i], 1e-13);

  // Phi_tt + cot Phi_t + Phi_ss - Phi/4 = 0, exact up to roundoff
  const RealVec th{0.1, 0.45, 0.8};
  const StripField f0 = extend_flat(gf, th, table, 0), f1 = extend_flat(gf, th, table, 1),
                   f2 = extend_flat(gf, th, table, 2);
  for (size_t r = 0; r < th.size(); ++r) {
    const RealVec ss = d_sigma(grid, f0.column(r), 2);
    double res = 0.0, scale = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
      res = std::max(res, std::abs(f2.at(i, r) + f1.at(i, r) / std::tan(th[r]) + ss[i] -
                                   0.25 * f0.at(i, r)));
      scale = std::max(scale, std::abs(f2.at(i, r)) + std::abs(ss[i]));
    }
    EXPECT_LT(res / scale, 1e-10) << th[r];
  }
  EXPECT_THROW(extend_flat(gf, {kTheta + 0.01}, table), DomainError);
  EXPECT_THROW(extend_flat(gf, {0.0}, table), DomainError);
}

TEST_F(FlatDn, SobolevTransferBounded) {
  using rule = boost::math::quadrature::gauss<double, 30>;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> w(0.6, 2.0), f(0.0, 4.0), c(-4.0, 4.0);
  // Gauss nodes on (0, theta*)
  RealVec th, wt;
  for (size_t i = 0; i < rule::abscissa().size(); ++i)
    for (int sgn : {-1, 1}) {
      if (rule::abscissa()[i] == 0.0 && sgn < 0) continue;
      th.push_back(0.5 * kTheta * (1.0 + sgn * rule::abscissa()[i]));
      wt.push_back(0.5 * kTheta * rule::weights()[i]);
    }
  for (double s : {1.0, 2.0, 3.0}) {
    double lo = 1e300, hi = 0.0;
    for (int k = 0; k < 10; ++k) {
      const GridFn phi = GridFn::from_real(grid, gauss_mode(grid, w(rng), f(rng), c(rng)));
      const StripField e0 = extend_flat(phi, th, table, 0), e1 = extend_flat(phi, th, table, 1);
      double lhs = 0.0;
      for (size_t r = 0; r < th.size(); ++r) {
        const double a = sobolev_norm(grid, e0.column(r), s + 0.5);
        const double b = sobolev_norm(grid, e1.column(r), s - 0.5);
        lhs += wt[r] * (a * a + b * b);
      }
      const double ratio = lhs / std::pow(sobolev_norm(phi, s), 2);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    EXPECT_LE(hi / lo, 3.0) << "s=" << s;
  }
}

TEST(BesselBounds, TrivialValues) {
  EXPECT_NEAR(bessel_bound_integral(0, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(bessel_bound_integral(1, 0.0), 0.0, 1e-15);
}

TEST(BesselBounds, AgreesWithDirectIntegral) {
  using boost::math::cyl_bessel_i;
  const double x = 5.0;
  auto d = [](int k, double t) {
    switch (k) {
      case 0: return cyl_bessel_i(0, t);
      case 1: return cyl_bessel_i(1, t);
      default: return 0.5 * (cyl_bessel_i(0, t) + cyl_bessel_i(2, t));
    }
  };
  for (int k = 0; k <= 2; ++k) {
    const double ref = oracle::simpson(
        [&](double y) { return std::pow(d(k, y * x) / cyl_bessel_i(0, x), 2); }, 0.0, 1.0, 2000);
    EXPECT_NEAR(bessel_bound_integral(k, x), ref, 1e-10) << k;
  }
}

TEST(BesselBounds, SupremaWithinConstants) {
  const BesselBoundsReport r = verify_bessel_bounds(50.0, 200);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.sup_integral, 1.0 + 1e-9);
  EXPECT_LE(r.sup_weighted, 3.0 + 1e-9);
}

TEST(KernelBounds, ZeroFrequencyAgainstEllipticForm) {
  const auto S = kernel_bound_integrals(0.0, kTheta);
  const double ks = oracle::legendre_minus_half(kTheta);
  const double s0 = oracle::simpson(
      [&](double t) { return std::pow(oracle::legendre_minus_half(t) / ks, 2); }, 1e-12, kTheta, 4000);
  const double s1 =
      oracle::simpson([&](double t) { return std::pow(oracle_dk0(t) / ks, 2); }, 1e-9, kTheta, 4000);
  EXPECT_NEAR(S[0], s0, 1e-9 * s0);
  EXPECT_NEAR(S[1], s1, 1e-7 * s1);
}

TEST(KernelBounds, LargeFrequencyLimits) {
  // S_m -> theta*^(2m)/2 for m >= 2 and 1/2 for m = 0, 1; extrapolate the 1/zeta term
  const auto a = kernel_bound_integrals(200.0, kTheta), b = kernel_bound_integrals(400.0, kTheta);
  const double lim[4] = {0.5, 0.5, 0.5 * std::pow(kTheta, 4), 0.5 * std::pow(kTheta, 6)};
  for (int m = 0; m < 4; ++m) {
    const double ext = 2.0 * b[m] - a[m];
    EXPECT_NEAR(ext, lim[m], 2e-3 * lim[m]) << m;
  }
}

TEST(KernelBounds, ReportShapeAndLowerPlateaus) {
  const SigmaGrid g(16.0, 256);
  const SymbolTable t = build_symbol_table(g, ConeAngle(kTheta));
  const KernelBoundsReport r = verify_kernel_bounds(t, 100.0, 64);
  ASSERT_FALSE(r.rows.empty());
  for (size_t i = 1; i < r.rows.size(); ++i) EXPECT_LE(r.rows[i - 1].zeta, r.rows[i].zeta);
  EXPECT_NEAR(r.rows.back().zeta, 100.0, 1e-12);
  for (int m = 0; m < 4; ++m) {
    EXPECT_TRUE(std::isfinite(r.sup[m]));
    EXPECT_GT(r.sup[m], 0.0);
  }
  for (int m = 0; m < 3; ++m) EXPECT_LT(r.plateau_variation[m], kPlateauTolerance) << m;
  EXPECT_THROW(verify_kernel_bounds(t, 600.0), DomainError);
}
