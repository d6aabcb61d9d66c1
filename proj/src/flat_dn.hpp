#pragma once

#include <array>
#include <vector>

#include "conical_fn.hpp"
#include "gridcore.hpp"
#include "strip_field.hpp"

namespace conedn {

// Flat-cone DN symbol g(zeta) = d_theta k(zeta, theta*) / k(zeta, theta*) on the grid band.
struct SymbolTable {
  SigmaGrid grid;
  double theta_star;
  ConicalParams params;
  RealVec g;            // FFT order
  RealVec k_star;       // k(zeta_q, theta*) = k_star * exp(k_star_log)
  RealVec k_star_log;
};

SymbolTable build_symbol_table(const SigmaGrid& grid, const ConeAngle& theta_star,
                               const ConicalParams& p = {});

double flat_symbol(double zeta, double theta_star, const ConicalParams& p = {});

GridFn dn_flat(const GridFn& phi, const SymbolTable& table);
RealVec dn_flat(const RealVec& phi, const SymbolTable& table);

// Rows theta_samples of d^m_theta Phi*(., theta); the field's y coordinates are theta/theta*.
StripField extend_flat(const GridFn& phi, const RealVec& theta_samples, const SymbolTable& table,
                       int dtheta_order = 0);

// S_0..S_3 at one frequency.
std::array<double, 4> kernel_bound_integrals(double zeta, double theta_star,
                                             const ConicalParams& p = {});

struct BesselBoundsReport {
  double sup_integral = 0.0;  // sup of int_0^1 |I0^(k)(yx)/I0(x)|^2 dy
  double sup_weighted = 0.0;  // sup of x times the same integral
  double argsup_x = 0.0;
  int argsup_k = 0;
  bool pass = false;
};

double bessel_bound_integral(int k, double x);
BesselBoundsReport verify_bessel_bounds(double x_max = 50.0, int n_x = 200);

struct KernelBoundRow {
  double zeta;
  std::array<double, 4> S;
};

struct KernelBoundsReport {
  std::vector<KernelBoundRow> rows;  // sorted by zeta
  std::array<double, 4> sup{};
  std::array<double, 4> argsup{};
  // relative change of the running supremum across [zeta_max/2, zeta_max]
  std::array<double, 4> plateau_variation{};
  BesselBoundsReport bessel;
  bool pass = false;
};

constexpr double kPlateauTolerance = 0.05;

KernelBoundsReport verify_kernel_bounds(const SymbolTable& table, double zeta_max,
                                        int n_geometric = 64);

}  // namespace conedn
