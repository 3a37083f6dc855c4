#pragma once

// Radial eigenfunctions and positive-energy four-spinors of the ring model.
//
// R(rho) = N e^(-mu/2) mu^(|tau|/2) M(-n, |tau|+1, mu),  mu = sqrt(2 m a2) rho^2,
// normalized to  int_0^inf |R|^2 rho drho = 1.  The angular factor
// e^(i(l+1/2)varphi) and the 1/sqrt(2 pi) that normalizes it are carried
// separately: spinor components store radial profiles only.

#include <array>
#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "dirac_ring/model.hpp"
#include "dirac_ring/oracle.hpp"

namespace dirac_ring::wavefunction {

using oracle::GridSpec;
using cplx = std::complex<double>;

/// coef * rho^power * M(a, b, mu)
struct KummerTerm {
  cplx coef;
  int power;
  double a;
  double b;
};

/// e^(-mu/2) mu^(t/2) * sum of KummerTerm, evaluated with an exact derivative.
struct RadialExpansion {
  double t = 0.0;  ///< |tau|
  double c = 0.0;  ///< sqrt(2 m a2)
  std::vector<KummerTerm> terms;

  bool empty() const noexcept { return terms.empty(); }
  cplx value(double rho) const;
  /// d/drho, using dM/dmu = (a/b) M(a+1, b+1, mu).
  cplx derivative(double rho) const;
};

struct RadialFunction {
  GridSpec grid;
  std::vector<double> values;
  ChannelCoefficients channel;
  ChannelNumbers nums;
  double norm_constant;
};

/// Exact normalization N for int |R|^2 rho drho = 1:
/// N^2 = 2 sqrt(2 m a2) Gamma(n+|tau|+1) / (n! Gamma(|tau|+1)^2).
double radial_norm_constant(const PhysicalParams& params, const ChannelNumbers& nums);

/// Throws NoBoundStates when a2 == 0.
RadialFunction radial_function(const PhysicalParams& params, const ChannelNumbers& nums, const GridSpec& grid);

/// Composite Simpson of samples on the grid (3/8 rule closes an odd interval
/// count), plus the sliver [0, rho_min] assuming integrand ~ rho^small_rho_power.
double radial_integral(const GridSpec& grid, std::span<const double> integrand, double small_rho_power);

/// int |R|^2 rho drho on the grid.
double norm_integral(const RadialFunction& r);

/// int R1 R2 rho drho; both functions must share grid and |tau|.
double overlap(const RadialFunction& r1, const RadialFunction& r2);

/// Interior sign changes.
int node_count(std::span<const double> values);

struct Spinor4 {
  GridSpec grid;
  /// (eta_up, eta_down, chi_up, chi_down) radial profiles sampled on the grid.
  std::array<std::vector<cplx>, 4> components;
  std::array<RadialExpansion, 4> profiles;
  double energy = 0.0;
  ChannelNumbers nums{0, 0, 1};
  ChannelCoefficients channel{};
  /// psi(rho, varphi) = component(rho) * e^(i (l + 1/2) varphi); k = 0.
  static constexpr std::string_view phase_convention = "exp(i*(l+1/2)*varphi), k=0";
};

/// Second Kummer parameter of the contiguous correction term in the small component.
enum class ContiguousParameter {
  /// M(-n+1, |tau|+2, mu): the derivative of M(-n, |tau|+1, mu) up to -n/(|tau|+1).
  derivative,
  /// M(-n+1, |tau|+1, mu) with b left unchanged; fails the Dirac
  /// residual for n >= 2. Kept only to demonstrate that.
  same_b,
};

struct SpinorOptions {
  ContiguousParameter contiguous = ContiguousParameter::derivative;
  /// DomainTooSmall when a component at rho_max exceeds this fraction of its peak.
  double boundary_tol = 1e-10;
};

/// Positive-energy spinor. Large component C M(-n, |tau|+1, mu) f; small
/// component i/(E+m) [2 sqrt(2ma2) rho +- (...)/rho] times the same, plus the
/// contiguous term. C = N / sqrt(2 pi).
Spinor4 build_spinor(const PhysicalParams& params, const ChannelNumbers& nums, double energy, const GridSpec& grid,
                     const SpinorOptions& opts = {});

/// The default grid, with rho_max pushed out (same step) until every spinor
/// component of the channel is below 1e-11 of its peak there. The default
/// rho_max = 8 L is too short for that once n >= 1.
GridSpec spinor_grid(const PhysicalParams& params, const ChannelNumbers& nums);

/// Full component value at (rho, varphi), including the angular phase.
cplx evaluate(const Spinor4& spinor, int component, double rho, double varphi);

struct DiracResidual {
  double r1;  ///< upper equation: (E - m) eta against the chi terms
  double r2;  ///< lower equation: (E + m) chi against the eta terms
  bool degenerate_norm;
};

/// Substitutes the spinor back into the coupled first-order radial equations,
/// with analytic radial derivatives. Residual L2 norms (weight rho) relative to
/// || (E + m) eta ||. A zero spinor gives (0, 0) with degenerate_norm set.
DiracResidual dirac_residual(const Spinor4& spinor, const PhysicalParams& params);

}  // namespace dirac_ring::wavefunction
