#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "errors.hpp"
#include "gridcore.hpp"
#include "oracles.hpp"

using namespace conedn;

namespace {

RealVec gaussian(const SigmaGrid& g, double w, double f = 0.0) {
  RealVec v(g.size());
  for (int j = 0; j < g.size(); ++j) {
    const double s = g.node(j);
    v[j] = std::exp(-s * s / (w * w)) * std::cos(f * s);
  }
  return v;
}

// Naive O(n^2) transform in the unitary convention.
std::vector<cplx> naive_dft(const SigmaGrid& g, const RealVec& f) {
  const int n = g.size();
  std::vector<cplx> c(n);
  for (int q = 0; q < n; ++q) {
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) acc += f[j] * std::exp(cplx(0.0, -g.frequency(q) * g.node(j)));
    c[q] = acc * std::sqrt(2.0 * g.half_length()) / static_cast<double>(n);
  }
  return c;
}

}  // namespace

TEST(SigmaGrid, RejectsBadSizes) {
  EXPECT_THROW(SigmaGrid(16.0, 7), ConfigError);
  EXPECT_THROW(SigmaGrid(16.0, 96), ConfigError);
  EXPECT_THROW(SigmaGrid(-1.0, 64), ConfigError);
  EXPECT_NO_THROW(SigmaGrid(16.0, 8));
}

TEST(SigmaGrid, FrequenciesInFftOrder) {
  const SigmaGrid g(8.0, 16);
  EXPECT_DOUBLE_EQ(g.frequency(0), 0.0);
  EXPECT_NEAR(g.frequency(1), std::numbers::pi / 8.0, 1e-15);
  EXPECT_NEAR(g.frequency(15), -std::numbers::pi / 8.0, 1e-15);
  EXPECT_EQ(g.wavenumber(8), -8);
  EXPECT_NEAR(g.node(0), -8.0, 1e-15);
  EXPECT_NEAR(g.spacing(), 1.0, 1e-15);
}

TEST(Spectrum, MatchesNaiveTransform) {
  const SigmaGrid g(5.0, 32);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  RealVec f(32);
  for (double& v : f) v = nd(rng);
  const auto ref = naive_dft(g, f);
  const Spectrum sp = to_spectrum(GridFn::from_real(g, f));
  for (int q = 0; q < 32; ++q) EXPECT_LT(std::abs(sp.coeffs()[q] - ref[q]), 1e-12);
}

TEST(Spectrum, ParsevalAndRoundTrip) {
  const SigmaGrid g(16.0, 256);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 5; ++trial) {
    RealVec f(256);
    for (double& v : f) v = nd(rng);
    const GridFn gf = GridFn::from_real(g, f);
    const Spectrum sp = to_spectrum(gf);
    double lhs = 0.0;
    for (const cplx& c : sp.coeffs()) lhs += std::norm(c);
    const double rhs = oracle::l2(f, g.spacing());
    EXPECT_NEAR(std::sqrt(lhs), rhs, 1e-12 * rhs);
    const RealVec back = to_gridfn(sp).real_values();
    EXPECT_LT(oracle::max_abs_diff(back, f), 1e-13);
  }
}

TEST(Spectrum, RealValuesRejectsComplexData) {
  const SigmaGrid g(4.0, 16);
  std::vector<cplx> v(16, cplx(1.0, 0.5));
  EXPECT_THROW(GridFn(g, v).real_values(), EvaluationError);
  EXPECT_THROW(GridFn(g, std::vector<cplx>(15)), ConfigError);
}

TEST(DSigma, ExactOnGridModes) {
  const SigmaGrid g(8.0, 64);
  const double k = g.frequency(5);
  RealVec f(64), df(64), d2f(64);
  for (int j = 0; j < 64; ++j) {
    const double s = g.node(j);
    f[j] = std::sin(k * s);
    df[j] = k * std::cos(k * s);
    d2f[j] = -k * k * std::sin(k * s);
  }
  EXPECT_LT(oracle::max_abs_diff(d_sigma(g, f), df), 1e-12);
  EXPECT_LT(oracle::max_abs_diff(d_sigma(g, f, 2), d2f), 1e-11);
}

TEST(DSigma, GaussianDerivativeSpectralAccuracy) {
  const SigmaGrid g(16.0, 256);
  const RealVec f = gaussian(g, 1.5);
  RealVec df(256);
  for (int j = 0; j < 256; ++j) {
    const double s = g.node(j);
    df[j] = -2.0 * s / 2.25 * std::exp(-s * s / 2.25);
  }
  EXPECT_LT(oracle::max_abs_diff(d_sigma(g, f), df), 1e-12);
}

TEST(Sobolev, ModeNormWeighting) {
  const SigmaGrid g(8.0, 64);
  const double k = g.frequency(3);
  RealVec f(64);
  for (int j = 0; j < 64; ++j) f[j] = std::cos(k * g.node(j));
  const double l2 = oracle::l2(f, g.spacing());
  EXPECT_NEAR(l2_norm(GridFn::from_real(g, f)), l2, 1e-12);
  for (double s : {-1.0, 0.5, 2.0})
    EXPECT_NEAR(sobolev_norm(g, f, s), std::pow(1.0 + k * k, 0.5 * s) * l2, 1e-11 * l2);
  EXPECT_THROW(sobolev_norm(g, f, 9.0), DomainError);
}

TEST(Multiplier, RejectsNonFiniteSymbol) {
  const SigmaGrid g(8.0, 32);
  const GridFn f = GridFn::from_real(g, gaussian(g, 1.0));
  EXPECT_THROW(apply_multiplier(f, [](double z) { return cplx(z == 0.0 ? NAN : 1.0, 0.0); }),
               EvaluationError);
}

TEST(Multiplier, IdentityAndDerivativeSymbol) {
  const SigmaGrid g(16.0, 128);
  const RealVec f = gaussian(g, 1.0, 1.0);
  const GridFn gf = GridFn::from_real(g, f);
  const RealVec id = apply_multiplier(gf, [](double) { return cplx(1.0, 0.0); }).real_values();
  EXPECT_LT(oracle::max_abs_diff(id, f), 1e-14);
  const RealVec d = apply_multiplier(gf, [](double z) { return cplx(0.0, z); }).real_values();
  EXPECT_LT(oracle::max_abs_diff(d, d_sigma(g, f)), 1e-12);
}

TEST(Interpolate, ReproducesNodesAndBandLimitedModes) {
  const SigmaGrid g(8.0, 64);
  const double k = g.frequency(4);
  RealVec f(64);
  for (int j = 0; j < 64; ++j) f[j] = std::cos(k * g.node(j) + 0.3);
  const GridFn gf = GridFn::from_real(g, f);
  EXPECT_NEAR(spectral_interpolate(gf, g.node(17)), f[17], 1e-13);
  for (double s : {-7.3, 0.123, 5.55}) EXPECT_NEAR(spectral_interpolate(gf, s), std::cos(k * s + 0.3), 1e-13);
}

TEST(Pullback, FirstOrderEquality) {
  const SigmaGrid g(16.0, 256);
  // F(r) = exp(-ln(r)^2): pulled back it is a Gaussian in sigma
  const auto F = [](double r) { return std::exp(-std::log(r) * std::log(r) / 4.0); };
  const PullbackNorms pb = pullback_norm_check(g, F, 1);
  EXPECT_NEAR(pb.lhs, pb.rhs, 1e-6 * pb.lhs);
  // the sigma side by an independent integral of f^2 + f'^2
  const double ref = std::sqrt(oracle::simpson(
      [](double s) {
        const double f = std::exp(-s * s / 4.0), df = -s / 2.0 * f;
        return f * f + df * df;
      },
      -16.0, 16.0, 4000));
  EXPECT_NEAR(pb.lhs, ref, 1e-8 * ref);
  EXPECT_THROW(pullback_norm_check(g, F, 4), DomainError);
}

TEST(Pullback, HigherOrderEquivalence) {
  const SigmaGrid g(16.0, 256);
  const auto F = [](double r) {
    const double l = std::log(r);
    return std::exp(-l * l / 3.0) * std::cos(l);
  };
  for (int m = 2; m <= 3; ++m) {
    const PullbackNorms pb = pullback_norm_check(g, F, m);
    const double C = pullback_equivalence_constant(m);
    EXPECT_LE(pb.rhs, C * pb.lhs);
    EXPECT_LE(pb.lhs, C * pb.rhs);
  }
}

TEST(Pullback, RoundTripIdentity) {
  const SigmaGrid g(16.0, 128);
  const RealVec f = gaussian(g, 2.0, 0.7);
  const RealVec back = pull_to_sigma(g, push_to_r(GridFn::from_real(g, f))).real_values();
  EXPECT_LT(oracle::max_abs_diff(back, f), 1e-12);
}

TEST(Bell, StirlingNumbers) {
  const BellConstants b = bell_constants(6);
  // Stirling numbers by their own recurrences
  std::vector<std::vector<double>> S(7, std::vector<double>(7, 0.0)), s1 = S;
  S[0][0] = s1[0][0] = 1.0;
  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= n; ++k) {
      S[n][k] = k * S[n - 1][k] + S[n - 1][k - 1];
      s1[n][k] = (n - 1) * s1[n - 1][k] + s1[n - 1][k - 1];
    }
  for (int n = 0; n <= 6; ++n)
    for (int k = 0; k <= n; ++k) {
      EXPECT_DOUBLE_EQ(b.c[n][k], S[n][k]) << n << "," << k;
      EXPECT_DOUBLE_EQ(b.c_tilde[n][k], s1[n][k]) << n << "," << k;
    }
  EXPECT_DOUBLE_EQ(b.c[4][2], 7.0);
  EXPECT_DOUBLE_EQ(b.c_tilde[4][2], 11.0);
}
