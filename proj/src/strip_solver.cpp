#include "strip_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "errors.hpp"
#include "jet.hpp"

namespace conedn {

using std::numbers::pi;

ConeProfile::ConeProfile(const ConeAngle& theta_star, const SigmaGrid& grid,
                         const RealVec& eta_tilde)
    : theta_star_(theta_star.theta_star), grid_(grid), eta_tilde_(eta_tilde) {
  if (static_cast<int>(eta_tilde.size()) != grid.size())
    throw ConfigError("eta_tilde length does not match n_sigma");
  sup_ = sup_norm(eta_tilde_);
  const double bound = std::min(theta_star_, pi - theta_star_);
  if (!(sup_ < bound))
    throw DomainError("cone perturbation violates |eta_tilde|_inf < min(theta*, pi - theta*): " +
                      std::to_string(sup_) + " >= " + std::to_string(bound));
  eta_.resize(eta_tilde_.size());
  for (size_t i = 0; i < eta_.size(); ++i) eta_[i] = theta_star_ + eta_tilde_[i];
  eta_sigma_ = d_sigma(grid_, eta_tilde_);
}

ConeProfile ConeProfile::flat(const ConeAngle& theta_star, const SigmaGrid& grid) {
  return ConeProfile(theta_star, grid, RealVec(grid.size(), 0.0));
}

ConeProfile ConeProfile::perturbed(const RealVec& h, double eps) const {
  if (h.size() != eta_tilde_.size()) throw ConfigError("perturbation length mismatch");
  RealVec e(eta_tilde_);
  for (size_t i = 0; i < e.size(); ++i) e[i] += eps * h[i];
  return ConeProfile(ConeAngle(theta_star_), grid_, e);
}

ConeProfile ConeProfile::reflected() const {
  RealVec e(eta_tilde_);
  for (double& v : e) v = -v;
  return ConeProfile(ConeAngle(pi - theta_star_), grid_, e);
}

namespace {

Eigen::FFT<double>& fft() {
  thread_local Eigen::FFT<double> engine;
  return engine;
}

// Spectral d_sigma applied to each of `cols` contiguous blocks of length n.
void d_sigma_blocks(const SigmaGrid& g, const double* in, double* out, int cols) {
  const int n = g.size();
  std::vector<cplx> buf(n), spec, back;
  for (int b = 0; b < cols; ++b) {
    for (int i = 0; i < n; ++i) buf[i] = in[static_cast<size_t>(b) * n + i];
    fft().fwd(spec, buf);
    for (int q = 0; q < n; ++q) spec[q] *= (q == n / 2) ? cplx(0.0) : cplx(0.0, g.frequency(q));
    fft().inv(back, spec);
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(b) * n + i] = back[i].real();
  }
}

}  // namespace

StripCoefficients assemble_coefficients(const ConeProfile& profile, const StripGrid& grid) {
  if (!(profile.grid() == grid.sigma())) throw ConfigError("profile and strip grid differ");
  const int n = grid.sigma().size(), ny = grid.n_y();
  StripCoefficients c;
  c.n_sigma = n;
  c.n_y = ny;
  c.a11_face.resize(static_cast<size_t>(ny + 1) * n);
  c.a12_face.resize(c.a11_face.size());
  c.a22_face.resize(c.a11_face.size());
  c.a11_cell.resize(static_cast<size_t>(ny) * n);
  c.a12_cell.resize(c.a11_cell.size());
  c.gamma_cell.resize(c.a11_cell.size());
  const auto& eta = profile.eta();
  const auto& es = profile.eta_sigma();
  for (int i = 0; i < n; ++i) {
    if (!(eta[i] > 0.0 && eta[i] < pi)) throw DomainError("eta leaves (0, pi)");
  }
  for (int f = 0; f <= ny; ++f) {
    const double y = grid.face(f);
    for (int i = 0; i < n; ++i) {
      const double s = std::sin(y * eta[i]);
      const size_t k = static_cast<size_t>(f) * n + i;
      c.a11_face[k] = s * eta[i];
      c.a12_face[k] = -s * y * es[i];
      c.a22_face[k] = s * (1.0 + y * y * es[i] * es[i]) / eta[i];
    }
  }
  for (int j = 0; j < ny; ++j) {
    const double y = grid.center(j);
    for (int i = 0; i < n; ++i) {
      const double s = std::sin(y * eta[i]);
      const size_t k = static_cast<size_t>(j) * n + i;
      c.a11_cell[k] = s * eta[i];
      c.a12_cell[k] = -s * y * es[i];
      c.gamma_cell[k] = 0.25 * eta[i] * s;
    }
  }
  return c;
}

RealVec apply_strip_operator(const StripCoefficients& c, const StripGrid& grid, const RealVec& v,
                             const RealVec& top, bool with_gamma) {
  const int n = c.n_sigma, ny = c.n_y;
  const double h = grid.dy();
  const SigmaGrid& g = grid.sigma();
  auto V = [&](int j, int i) { return v[static_cast<size_t>(j) * n + i]; };

  RealVec vs(static_cast<size_t>(ny) * n);
  d_sigma_blocks(g, v.data(), vs.data(), ny);
  RealVec top_s(n);
  d_sigma_blocks(g, top.data(), top_s.data(), 1);

  // sigma-flux at cell centers
  RealVec fs(vs.size());
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < n; ++i) {
      const double below = (j == 0) ? V(0, i) : V(j - 1, i);
      const double above =
          (j == ny - 1) ? (8.0 * top[i] - 6.0 * V(ny - 1, i) + V(ny - 2, i)) / 3.0 : V(j + 1, i);
      const size_t k = static_cast<size_t>(j) * n + i;
      fs[k] = c.a11_cell[k] * vs[k] + c.a12_cell[k] * (above - below) / (2.0 * h);
    }
  RealVec div_s(fs.size());
  d_sigma_blocks(g, fs.data(), div_s.data(), ny);

  // y-flux on faces; face 0 carries none
  RealVec fy(static_cast<size_t>(ny + 1) * n, 0.0);
  for (int f = 1; f < ny; ++f)
    for (int i = 0; i < n; ++i) {
      const size_t k = static_cast<size_t>(f) * n + i;
      const double vsf = 0.5 * (vs[static_cast<size_t>(f - 1) * n + i] + vs[k]);
      fy[k] = c.a12_face[k] * vsf + c.a22_face[k] * (V(f, i) - V(f - 1, i)) / h;
    }
  for (int i = 0; i < n; ++i) {
    const size_t k = static_cast<size_t>(ny) * n + i;
    const double vy = (8.0 * top[i] - 9.0 * V(ny - 1, i) + V(ny - 2, i)) / (3.0 * h);
    fy[k] = c.a12_face[k] * top_s[i] + c.a22_face[k] * vy;
  }

  RealVec out(v.size());
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < n; ++i) {
      const size_t k = static_cast<size_t>(j) * n + i;
      double r = -div_s[k] - (fy[k + n] - fy[k]) / h;
      if (with_gamma) r += c.gamma_cell[k] * V(j, i);
      out[k] = r;
    }
  return out;
}

struct StripSolver::Preconditioner {
  int n = 0, ny = 0;
  // per |wavenumber| q = 0..n/2: Thomas factors
  std::vector<RealVec> lower, cprime, denom;

  Preconditioner(const StripGrid& grid, double theta_ref) {
    n = grid.sigma().size();
    ny = grid.n_y();
    const double h2 = grid.dy() * grid.dy();
    RealVec a11(ny), gam(ny), a22(ny + 1);
    for (int j = 0; j < ny; ++j) {
      const double s = std::sin(grid.center(j) * theta_ref);
      a11[j] = s * theta_ref;
      gam[j] = 0.25 * theta_ref * s;
    }
    for (int f = 0; f <= ny; ++f) a22[f] = std::sin(grid.face(f) * theta_ref) / theta_ref;
    for (int q = 0; q <= n / 2; ++q) {
      const double z = grid.sigma().frequency(q);
      const double lam = (q == n / 2) ? 0.0 : z * z;
      RealVec lo(ny, 0.0), di(ny), up(ny, 0.0);
      for (int j = 0; j < ny; ++j) {
        di[j] = a11[j] * lam + gam[j];
        if (j < ny - 1) {
          di[j] += (a22[j + 1] + a22[j]) / h2;
          up[j] = -a22[j + 1] / h2;
          lo[j] = -a22[j] / h2;
        } else {
          di[j] += (3.0 * a22[ny] + a22[j]) / h2;
          lo[j] = -(a22[j] + a22[ny] / 3.0) / h2;
        }
      }
      RealVec cp(ny), dn(ny);
      dn[0] = di[0];
      cp[0] = up[0] / dn[0];
      for (int j = 1; j < ny; ++j) {
        dn[j] = di[j] - lo[j] * cp[j - 1];
        cp[j] = up[j] / dn[j];
      }
      lower.push_back(lo);
      cprime.push_back(cp);
      denom.push_back(dn);
    }
  }

  void apply(const RealVec& in, RealVec& out) const {
    std::vector<std::vector<cplx>> spec(ny);
    std::vector<cplx> buf(n);
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < n; ++i) buf[i] = in[static_cast<size_t>(j) * n + i];
      fft().fwd(spec[j], buf);
    }
    std::vector<cplx> x(ny);
    for (int q = 0; q < n; ++q) {
      const int a = q <= n / 2 ? q : n - q;
      const RealVec& lo = lower[a];
      const RealVec& cp = cprime[a];
      const RealVec& dn = denom[a];
      x[0] = spec[0][q] / dn[0];
      for (int j = 1; j < ny; ++j) x[j] = (spec[j][q] - lo[j] * x[j - 1]) / dn[j];
      for (int j = ny - 2; j >= 0; --j) x[j] -= cp[j] * x[j + 1];
      for (int j = 0; j < ny; ++j) spec[j][q] = x[j];
    }
    out.resize(in.size());
    std::vector<cplx> back;
    for (int j = 0; j < ny; ++j) {
      fft().inv(back, spec[j]);
      for (int i = 0; i < n; ++i) out[static_cast<size_t>(j) * n + i] = back[i].real();
    }
  }
};

StripSolver::StripSolver(const ConeProfile& profile, const StripGrid& grid, SolverOptions opts)
    : profile_(profile),
      grid_(grid),
      opts_(opts),
      coeffs_(assemble_coefficients(profile, grid)),
      pre_(std::make_unique<Preconditioner>(grid, profile.theta_star())) {}

StripSolver::~StripSolver() = default;
StripSolver::StripSolver(StripSolver&&) noexcept = default;

StripField StripSolver::solve(const RealVec& phi, const StripField* source,
                              SolveStats* stats) const {
  const int n = grid_.sigma().size(), ny = grid_.n_y();
  if (static_cast<int>(phi.size()) != n) throw ConfigError("phi length does not match n_sigma");
  const size_t N = static_cast<size_t>(n) * ny;
  const RealVec zero_top(n, 0.0);

  RealVec b = apply_strip_operator(coeffs_, grid_, RealVec(N, 0.0), phi);
  for (double& x : b) x = -x;
  if (source) {
    if (source->n_sigma() != n || source->n_y() != ny) throw ConfigError("source grid mismatch");
    const RealVec s = to_y_major(*source);
    for (size_t k = 0; k < N; ++k) b[k] += s[k];
  }

  using Vec = Eigen::VectorXd;
  auto A = [&](const Vec& x) {
    RealVec xv(x.data(), x.data() + N);
    RealVec r = apply_strip_operator(coeffs_, grid_, xv, zero_top);
    return Vec(Eigen::Map<Vec>(r.data(), static_cast<Eigen::Index>(N)));
  };
  auto P = [&](const Vec& x) {
    RealVec xv(x.data(), x.data() + N), out;
    pre_->apply(xv, out);
    return Vec(Eigen::Map<Vec>(out.data(), static_cast<Eigen::Index>(N)));
  };

  const Vec bv = Eigen::Map<Vec>(b.data(), static_cast<Eigen::Index>(N));
  const double bnorm = bv.norm();
  Vec x = Vec::Zero(static_cast<Eigen::Index>(N));
  SolveStats st;
  if (bnorm == 0.0) {
    if (stats) *stats = st;
    return StripField::zeros(grid_);
  }

  const int m = opts_.restart;
  Vec r = bv;
  double beta = r.norm();
  while (st.iterations < opts_.max_iterations) {
    std::vector<Vec> Vb;
    Vb.reserve(m + 1);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
    Vec cs = Vec::Zero(m), sn = Vec::Zero(m), gvec = Vec::Zero(m + 1);
    gvec(0) = beta;
    Vb.push_back(r / beta);
    int k = 0;
    for (; k < m && st.iterations < opts_.max_iterations; ++k) {
      Vec w = A(P(Vb[k]));
      for (int i = 0; i <= k; ++i) {
        H(i, k) = w.dot(Vb[i]);
        w -= H(i, k) * Vb[i];
      }
      H(k + 1, k) = w.norm();
      for (int i = 0; i < k; ++i) {
        const double t = cs(i) * H(i, k) + sn(i) * H(i + 1, k);
        H(i + 1, k) = -sn(i) * H(i, k) + cs(i) * H(i + 1, k);
        H(i, k) = t;
      }
      const double den = std::hypot(H(k, k), H(k + 1, k));
      cs(k) = H(k, k) / den;
      sn(k) = H(k + 1, k) / den;
      const double hk1 = H(k + 1, k);
      H(k, k) = den;
      H(k + 1, k) = 0.0;
      gvec(k + 1) = -sn(k) * gvec(k);
      gvec(k) = cs(k) * gvec(k);
      ++st.iterations;
      const double res = std::abs(gvec(k + 1)) / bnorm;
      st.history.push_back(res);
      if (res <= opts_.rel_tol || hk1 == 0.0) {
        ++k;
        break;
      }
      Vb.push_back(w / hk1);
    }
    const Vec yk = H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(gvec.head(k));
    Vec update = Vec::Zero(static_cast<Eigen::Index>(N));
    for (int i = 0; i < k; ++i) update += yk(i) * Vb[i];
    x += P(update);
    r = bv - A(x);
    beta = r.norm();
    st.relative_residual = beta / bnorm;
    if (st.relative_residual <= 10.0 * opts_.rel_tol) break;
  }
  if (stats) *stats = st;
  if (!(st.relative_residual <= 1e-10)) {
    std::string hist;
    for (size_t i = 0; i < st.history.size(); i += std::max<size_t>(1, st.history.size() / 8))
      hist += " " + std::to_string(st.history[i]);
    throw SolverError("strip solve did not reach 1e-10 relative residual (got " +
                      std::to_string(st.relative_residual) + "); history:" + hist);
  }
  RealVec xv(x.data(), x.data() + N);
  return from_y_major(grid_, xv);
}

RealVec boundary_dy(const StripField& v, const RealVec& phi) {
  const int ny = v.n_y();
  if (ny < 2) throw ConfigError("strip field needs at least two rows");
  const double h = 1.0 / ny;
  RealVec out(v.n_sigma());
  for (int i = 0; i < v.n_sigma(); ++i)
    out[i] = (8.0 * phi[i] - 9.0 * v.at(i, ny - 1) + v.at(i, ny - 2)) / (3.0 * h);
  return out;
}

DNResult StripSolver::dn(const RealVec& phi, StripField* field_out) const {
  const StripField v = solve(phi);
  const SigmaGrid& g = grid_.sigma();
  const int n = g.size();
  const RealVec vy = boundary_dy(v, phi);
  const RealVec ps = d_sigma(g, phi);
  const auto& eta = profile_.eta();
  const auto& es = profile_.eta_sigma();
  DNResult out{g, RealVec(n), RealVec(n), RealVec(n), 0.0};
  RealVec diff(n);
  for (int i = 0; i < n; ++i) {
    const double q = 1.0 + es[i] * es[i];
    out.g_of_phi[i] = q / eta[i] * vy[i] - es[i] * ps[i];
    const double b_trace = vy[i] / eta[i];
    out.B[i] = (es[i] * ps[i] + out.g_of_phi[i]) / q;
    diff[i] = out.B[i] - b_trace;
    out.V[i] = ps[i] - out.B[i] * es[i];
  }
  out.residual_norm = l2_norm(g, diff);
  if (field_out) *field_out = v;
  return out;
}

StripField solve_strip(const ConeProfile& profile, const RealVec& phi, const StripGrid& grid,
                       const StripField* source) {
  return StripSolver(profile, grid).solve(phi, source);
}

DNResult dn_general(const ConeProfile& profile, const RealVec& phi, const StripGrid& grid) {
  return StripSolver(profile, grid).dn(phi);
}

SobolevFunctionals sobolev_functionals(const ConeProfile& profile, double s) {
  if (!(s > 2.5)) throw DomainError("Sobolev index must exceed 5/2, got " + std::to_string(s));
  const SigmaGrid& g = profile.grid();
  const RealVec& e = profile.eta_tilde();
  const RealVec& es = profile.eta_sigma();
  const size_t n = e.size();
  RealVec e2(n), ees(n), es2(n);
  for (size_t i = 0; i < n; ++i) {
    e2[i] = e[i] * e[i];
    ees[i] = e[i] * es[i];
    es2[i] = es[i] * es[i];
  }
  double U = 0.0;
  for (const RealVec* f : std::initializer_list<const RealVec*>{&e, &es, &e2, &ees, &es2})
    U = std::max(U, sobolev_norm(g, *f, s - 0.5));
  const double th = profile.theta_star();
  const double sup_e = profile.sup_eta_tilde();
  const double sup_es = sup_norm(es);
  const double gap2 = (th - sup_e) * (th - sup_e);
  const double l =
      sinc(sup_e + th) * std::min({0.5, gap2 / (1.0 + 2.0 * sup_es * sup_es), gap2 / 4.0});
  return {U, l};
}

RealVec to_y_major(const StripField& f) {
  const int n = f.n_sigma(), ny = f.n_y();
  RealVec out(static_cast<size_t>(n) * ny);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < ny; ++j) out[static_cast<size_t>(j) * n + i] = f.at(i, j);
  return out;
}

StripField from_y_major(const StripGrid& grid, const RealVec& v) {
  StripField f = StripField::zeros(grid);
  const int n = grid.sigma().size(), ny = grid.n_y();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < ny; ++j) f.at(i, j) = v[static_cast<size_t>(j) * n + i];
  return f;
}

}  // namespace conedn
