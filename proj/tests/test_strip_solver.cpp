#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "conical_fn.hpp"
#include "errors.hpp"
#include "flat_dn.hpp"
#include "oracles.hpp"
#include "strip_solver.hpp"

using namespace conedn;

namespace {

const double kTheta = 0.860274346749;

RealVec gauss_mode(const SigmaGrid& g, double a, double w, double f, double c = 0.0) {
  RealVec v(g.size());
  for (int j = 0; j < g.size(); ++j) {
    const double s = g.node(j) - c;
    v[j] = a * std::exp(-s * s / (w * w)) * std::cos(f * s);
  }
  return v;
}

double weighted_dot(const RealVec& w, const RealVec& a, const RealVec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += w[i] * a[i] * b[i];
  return s;
}

}  // namespace

TEST(ConeProfile, ValidatesAmplitude) {
  const SigmaGrid g(16.0, 64);
  EXPECT_THROW(ConeProfile(ConeAngle(kTheta), g, RealVec(64, kTheta)), DomainError);
  EXPECT_THROW(ConeProfile(ConeAngle(kTheta), g, RealVec(63, 0.0)), ConfigError);
  EXPECT_THROW(ConeProfile(ConeAngle(2.5), g, RealVec(64, 0.7)), DomainError);
  EXPECT_NO_THROW(ConeProfile(ConeAngle(kTheta), g, RealVec(64, 0.8)));
}

TEST(ConeProfile, DerivedFields) {
  const SigmaGrid g(16.0, 128);
  const RealVec e = gauss_mode(g, 0.1, 1.0, 0.0);
  const ConeProfile p(ConeAngle(kTheta), g, e);
  EXPECT_NEAR(p.sup_eta_tilde(), 0.1, 1e-3);
  for (int i = 0; i < 128; ++i) {
    const double s = g.node(i);
    EXPECT_NEAR(p.eta()[i], kTheta + e[i], 1e-15);
    EXPECT_NEAR(p.eta_sigma()[i], -0.2 * s * std::exp(-s * s), 1e-12);
  }
  const ConeProfile r = p.reflected();
  EXPECT_NEAR(r.theta_star(), std::numbers::pi - kTheta, 1e-15);
  EXPECT_NEAR(r.eta()[64], std::numbers::pi - p.eta()[64], 1e-15);
  const ConeProfile q = p.perturbed(RealVec(128, 1.0), 0.01);
  EXPECT_NEAR(q.eta()[3], p.eta()[3] + 0.01, 1e-15);
}

TEST(StripCoefficients, EllipticOnInteriorFaces) {
  const SigmaGrid g(16.0, 64);
  const ConeProfile p(ConeAngle(kTheta), g, gauss_mode(g, 0.3, 1.0, 0.0));
  const StripGrid sg(g, 32);
  const StripCoefficients c = assemble_coefficients(p, sg);
  for (int f = 1; f <= 32; ++f)
    for (int i = 0; i < 64; ++i) {
      const size_t k = static_cast<size_t>(f) * 64 + i;
      EXPECT_GT(c.a11_face[k], 0.0);
      EXPECT_GT(c.a11_face[k] * c.a22_face[k] - c.a12_face[k] * c.a12_face[k], 0.0);
    }
  // the axis face degenerates
  for (int i = 0; i < 64; ++i) EXPECT_EQ(c.a22_face[i], 0.0);
}

TEST(StripSolver, FlatMatchesSymbolAtSecondOrder) {
  const SigmaGrid g(16.0, 256);
  const SymbolTable t = build_symbol_table(g, ConeAngle(kTheta));
  const RealVec phi = gauss_mode(g, 1.0, 1.5, 2.0);
  const RealVec ref = dn_flat(phi, t);
  std::vector<double> lx, ly;
  for (int ny : {32, 64, 128}) {
    const DNResult d = dn_general(ConeProfile::flat(ConeAngle(kTheta), g), phi, StripGrid(g, ny));
    RealVec diff(phi.size());
    for (size_t i = 0; i < phi.size(); ++i) diff[i] = d.g_of_phi[i] - ref[i];
    lx.push_back(std::log(1.0 / ny));
    ly.push_back(std::log(oracle::l2(diff, g.spacing()) / oracle::l2(phi, g.spacing())));
  }
  EXPECT_NEAR(oracle::slope(lx, ly), 2.0, 0.3);
  EXPECT_LT(std::exp(ly.back()), 1.0 / (128.0 * 128.0));
}

TEST(StripSolver, FlatPreconditionerIsExact) {
  const SigmaGrid g(16.0, 128);
  const StripSolver s(ConeProfile::flat(ConeAngle(kTheta), g), StripGrid(g, 64));
  SolveStats st;
  s.solve(gauss_mode(g, 1.0, 1.0, 1.0), nullptr, &st);
  EXPECT_LE(st.iterations, 2);
  EXPECT_LE(st.relative_residual, 1e-12);
}

TEST(StripSolver, ManufacturedHarmonicConverges) {
  // Phi = cos(m sigma) k(m, theta) is harmonic; on the strip v = Phi(sigma, y eta(sigma))
  const SigmaGrid g(16.0, 128);
  const ConeProfile p(ConeAngle(kTheta), g, gauss_mode(g, 0.1, 1.0, 0.0));
  const double m = g.frequency(8);
  const int n = g.size();
  RealVec phi(n), ref(n);
  for (int i = 0; i < n; ++i) {
    const double s = g.node(i);
    const ConicalJet j = conical_jet(m, p.eta()[i], 1);
    const double k0 = j.value(0), k1 = j.value(1);
    phi[i] = std::cos(m * s) * k0;
    // G = Phi_theta - eta_sigma Phi_sigma on the surface
    ref[i] = std::cos(m * s) * k1 + p.eta_sigma()[i] * m * std::sin(m * s) * k0;
  }
  std::vector<double> lx, ly;
  for (int ny : {32, 64, 128}) {
    const StripGrid sg(g, ny);
    StripField v = StripField::zeros(sg);
    const DNResult d = StripSolver(p, sg).dn(phi, &v);
    lx.push_back(std::log(1.0 / ny));
    ly.push_back(std::log(oracle::rel_l2(d.g_of_phi, ref)));
    if (ny == 128) {
      double fe = 0.0;
      for (int i = 0; i < n; i += 5)
        for (int jy = 0; jy < ny; jy += 7) {
          const double th = sg.center(jy) * p.eta()[i];
          fe = std::max(fe, std::abs(v.at(i, jy) - std::cos(m * g.node(i)) * conical_p(m, th)));
        }
      EXPECT_LT(fe / sup_norm(phi), 1e-4);
    }
  }
  EXPECT_NEAR(oracle::slope(lx, ly), 2.0, 0.3);
  EXPECT_LT(std::exp(ly.back()), 1e-4);
}

TEST(StripSolver, SourceTermReproducesDiscreteSolution) {
  const SigmaGrid g(16.0, 64);
  const StripGrid sg(g, 32);
  const ConeProfile p(ConeAngle(kTheta), g, gauss_mode(g, 0.2, 1.5, 0.5));
  StripField exact = StripField::zeros(sg);
  RealVec top(64);
  for (int i = 0; i < 64; ++i) {
    const double s = g.node(i);
    top[i] = std::exp(-s * s / 4.0);
    for (int j = 0; j < 32; ++j) exact.at(i, j) = top[i] * (0.3 + 0.7 * std::pow(sg.center(j), 2));
  }
  const RealVec src =
      apply_strip_operator(assemble_coefficients(p, sg), sg, to_y_major(exact), top);
  const StripField source = from_y_major(sg, src);
  const StripField v = StripSolver(p, sg).solve(top, &source);
  EXPECT_LT(oracle::max_abs_diff(v.values(), exact.values()), 1e-9);
}

TEST(StripSolver, LinearInData) {
  const SigmaGrid g(16.0, 64);
  const StripSolver s(ConeProfile(ConeAngle(kTheta), g, gauss_mode(g, 0.1, 1.0, 0.0)),
                      StripGrid(g, 32));
  const RealVec a = gauss_mode(g, 1.0, 1.0, 1.0), b = gauss_mode(g, 1.0, 2.0, 0.0, 2.0);
  RealVec c(64);
  for (int i = 0; i < 64; ++i) c[i] = 2.0 * a[i] - 3.0 * b[i];
  const RealVec ga = s.dn(a).g_of_phi, gb = s.dn(b).g_of_phi, gc = s.dn(c).g_of_phi;
  for (int i = 0; i < 64; ++i) EXPECT_NEAR(gc[i], 2.0 * ga[i] - 3.0 * gb[i], 1e-9);
  EXPECT_EQ(sup_norm(s.dn(RealVec(64, 0.0)).g_of_phi), 0.0);
}

TEST(StripSolver, WeightedSymmetryAndPositivity) {
  // <sin(eta) G a, b> is the boundary term of a symmetric energy
  const SigmaGrid g(16.0, 128);
  const ConeProfile p(ConeAngle(kTheta), g, gauss_mode(g, 0.15, 1.5, 0.0));
  RealVec w(128);
  for (int i = 0; i < 128; ++i) w[i] = std::sin(p.eta()[i]);
  const RealVec a = gauss_mode(g, 1.0, 1.0, 1.0, -1.0), b = gauss_mode(g, 1.0, 2.0, 0.5, 1.0);
  double prev = 1.0;
  for (int ny : {32, 64}) {
    const StripSolver s(p, StripGrid(g, ny));
    const double ab = weighted_dot(w, s.dn(a).g_of_phi, b), ba = weighted_dot(w, a, s.dn(b).g_of_phi);
    const double asym = std::abs(ab - ba) / std::abs(ab);
    EXPECT_LT(asym, 1e-2);
    EXPECT_LE(asym, prev);
    prev = asym;
    EXPECT_GT(weighted_dot(w, s.dn(a).g_of_phi, a), 0.0);
  }
}

TEST(StripSolver, TraceIdentities) {
  const SigmaGrid g(16.0, 64);
  const ConeProfile p(ConeAngle(kTheta), g, gauss_mode(g, 0.1, 1.0, 0.0));
  const RealVec phi = gauss_mode(g, 1.0, 1.5, 2.0);
  const DNResult d = dn_general(p, phi, StripGrid(g, 32));
  EXPECT_LT(d.residual_norm, 1e-12);
  const RealVec ps = d_sigma(g, phi);
  for (int i = 0; i < 64; ++i) {
    const double es = p.eta_sigma()[i];
    EXPECT_NEAR(d.g_of_phi[i], d.B[i] - es * d.V[i], 1e-12);
    EXPECT_NEAR(ps[i], d.V[i] + es * d.B[i], 1e-12);
  }
}

TEST(StripSolver, BoundaryDerivativeExactOnQuadratics) {
  const SigmaGrid g(8.0, 16);
  const StripGrid sg(g, 16);
  StripField v = StripField::zeros(sg);
  RealVec top(16);
  for (int i = 0; i < 16; ++i) {
    top[i] = 1.0 + 0.1 * i;
    for (int j = 0; j < 16; ++j) {
      const double y = sg.center(j);
      v.at(i, j) = top[i] * (0.5 + 0.25 * y + 0.25 * y * y);
    }
  }
  const RealVec vy = boundary_dy(v, top);
  for (int i = 0; i < 16; ++i) EXPECT_NEAR(vy[i], top[i] * 0.75, 1e-12);
}

TEST(StripField, BinaryAndCsvRoundTrip) {
  const SigmaGrid g(4.0, 8);
  const StripGrid sg(g, 16);
  StripField f = StripField::zeros(sg);
  for (size_t k = 0; k < f.values().size(); ++k) f.values()[k] = std::sin(0.37 * k);
  const auto dir = std::filesystem::temp_directory_path() / "conedn_field_test";
  std::filesystem::create_directories(dir);
  const std::string bin = (dir / "f.bin").string(), csv = (dir / "f.csv").string();
  f.write_binary(bin);
  f.write_csv(csv);
  EXPECT_EQ(std::filesystem::file_size(bin), 16u + 8u * 16u * 8u);
  std::ifstream in(bin, std::ios::binary);
  char magic[4];
  in.read(magic, 4);
  EXPECT_EQ(std::string(magic, 4), "CDN1");
  const StripField back = StripField::read_binary(bin, 4.0, sg.centers());
  EXPECT_EQ(back.values(), f.values());
  std::ifstream c(csv);
  std::string header;
  std::getline(c, header);
  EXPECT_FALSE(header.empty());
  EXPECT_EQ(from_y_major(sg, to_y_major(f)).values(), f.values());
  std::filesystem::remove_all(dir);
}

TEST(SobolevFunctionals, DomainAndMonotonicity) {
  const SigmaGrid g(16.0, 128);
  const ConeProfile flat = ConeProfile::flat(ConeAngle(kTheta), g);
  EXPECT_THROW(sobolev_functionals(flat, 2.5), DomainError);
  const SobolevFunctionals f0 = sobolev_functionals(flat, 3.0);
  EXPECT_EQ(f0.U_s, 0.0);
  EXPECT_GT(f0.l, 0.0);
  const SobolevFunctionals f1 =
      sobolev_functionals(ConeProfile(ConeAngle(kTheta), g, gauss_mode(g, 0.2, 1.0, 0.0)), 3.0);
  EXPECT_GT(f1.U_s, 0.0);
  EXPECT_LT(f1.l, f0.l);
}
