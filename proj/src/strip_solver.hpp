#pragma once

#include <memory>
#include <vector>

#include "conical_fn.hpp"
#include "gridcore.hpp"
#include "strip_field.hpp"

namespace conedn {

class ConeProfile {
 public:
  ConeProfile(const ConeAngle& theta_star, const SigmaGrid& grid, const RealVec& eta_tilde);
  static ConeProfile flat(const ConeAngle& theta_star, const SigmaGrid& grid);

  double theta_star() const { return theta_star_; }
  const SigmaGrid& grid() const { return grid_; }
  const RealVec& eta_tilde() const { return eta_tilde_; }
  const RealVec& eta() const { return eta_; }
  const RealVec& eta_sigma() const { return eta_sigma_; }
  double sup_eta_tilde() const { return sup_; }

  // eta_tilde + eps h
  ConeProfile perturbed(const RealVec& h, double eps) const;
  // theta -> pi - theta: the exterior wedge written as an interior one
  ConeProfile reflected() const;

 private:
  double theta_star_;
  SigmaGrid grid_;
  RealVec eta_tilde_, eta_, eta_sigma_;
  double sup_;
};

// Coefficients of -div(A grad v) + gamma v on the strip. Arrays are y-major:
// faces index f * n_sigma + i (f = 0..n_y), cells j * n_sigma + i.
struct StripCoefficients {
  int n_sigma = 0;
  int n_y = 0;
  RealVec a11_face, a12_face, a22_face;
  RealVec a11_cell, a12_cell;
  RealVec gamma_cell;
};

StripCoefficients assemble_coefficients(const ConeProfile& profile, const StripGrid& grid);

// Discrete -div(A grad v) + gamma v per unit area, with Dirichlet data `top`
// at y = 1 (ghost value from the quadratic through two interior cells).
RealVec apply_strip_operator(const StripCoefficients& c, const StripGrid& grid, const RealVec& v,
                             const RealVec& top, bool with_gamma = true);

struct SolverOptions {
  double rel_tol = 1e-12;
  int max_iterations = 400;
  int restart = 60;
};

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
  std::vector<double> history;
};

struct DNResult {
  SigmaGrid grid;
  RealVec g_of_phi;  // G[eta](phi)
  RealVec B;
  RealVec V;
  double residual_norm = 0.0;  // |B_definition - B_trace|_{L2}
};

// Matrix-free GMRES on the tensor grid, right-preconditioned by the exact
// discrete flat-cone operator (diagonal in sigma-frequency, tridiagonal in y).
class StripSolver {
 public:
  StripSolver(const ConeProfile& profile, const StripGrid& grid, SolverOptions opts = {});
  ~StripSolver();
  StripSolver(StripSolver&&) noexcept;

  const ConeProfile& profile() const { return profile_; }
  const StripGrid& grid() const { return grid_; }
  const StripCoefficients& coefficients() const { return coeffs_; }

  StripField solve(const RealVec& phi, const StripField* source = nullptr,
                   SolveStats* stats = nullptr) const;
  DNResult dn(const RealVec& phi, StripField* field_out = nullptr) const;

 private:
  struct Preconditioner;
  ConeProfile profile_;
  StripGrid grid_;
  SolverOptions opts_;
  StripCoefficients coeffs_;
  std::unique_ptr<Preconditioner> pre_;
};

StripField solve_strip(const ConeProfile& profile, const RealVec& phi, const StripGrid& grid,
                       const StripField* source = nullptr);
DNResult dn_general(const ConeProfile& profile, const RealVec& phi, const StripGrid& grid);

// d_y v at y = 1 from the second-order one-sided stencil.
RealVec boundary_dy(const StripField& v, const RealVec& phi);

struct SobolevFunctionals {
  double U_s;
  double l;
};
SobolevFunctionals sobolev_functionals(const ConeProfile& profile, double s);

// Conversions between StripField (sigma-major) and solver vectors (y-major).
RealVec to_y_major(const StripField& f);
StripField from_y_major(const StripGrid& grid, const RealVec& v);

}  // namespace conedn
