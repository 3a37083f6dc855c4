#pragma once

// Physical inputs of the ring model and the per-channel coefficients derived
// from them.
//
// Natural units (hbar = c = 1) throughout. For graphene-like systems read the
// speed of light as the Fermi velocity. The control parameters enter the
// radial coupling as sqrt(2 m a1)/rho + sqrt(2 m a2) rho, so a1 is
// dimensionless per unit mass (1/mass) and a2 carries mass^3.

#include <cmath>
#include <compare>
#include <numbers>

namespace dirac_ring {

/// Continuous inputs of the model. Immutable; validated on construction.
class PhysicalParams {
 public:
  /// Throws InvalidParams naming the offending field when m <= 0, a1 < 0,
  /// a2 < 0, q == 0, k != 0 or any value is not finite.
  PhysicalParams(double m, double a1, double a2, double q, double phi, double k = 0.0);

  double m() const noexcept { return m_; }
  double a1() const noexcept { return a1_; }
  double a2() const noexcept { return a2_; }
  double q() const noexcept { return q_; }
  double phi() const noexcept { return phi_; }
  /// Axial wavenumber; the planar model pins it to zero.
  double k() const noexcept { return k_; }

  /// phi0 = 2 pi / |q|.
  double phi0() const noexcept { return 2.0 * std::numbers::pi / (q_ < 0 ? -q_ : q_); }
  double phi_over_phi0() const noexcept { return phi_ / phi0(); }

  PhysicalParams with_phi(double phi) const { return {m_, a1_, a2_, q_, phi, k_}; }
  PhysicalParams with_a1(double a1) const { return {m_, a1, a2_, q_, phi_, k_}; }
  PhysicalParams with_a2(double a2) const { return {m_, a1_, a2, q_, phi_, k_}; }
  PhysicalParams with_m(double m) const { return {m, a1_, a2_, q_, phi_, k_}; }

  bool operator==(const PhysicalParams&) const = default;

 private:
  double m_;
  double a1_;
  double a2_;
  double q_;
  double phi_;
  double k_;
};

/// Quantum numbers (n, l, s) labelling one bound state.
class ChannelNumbers {
 public:
  /// Throws InvalidParams unless n >= 0 and s is +1 or -1.
  ChannelNumbers(int n, int l, int s);

  int n() const noexcept { return n_; }
  int l() const noexcept { return l_; }
  int s() const noexcept { return s_; }

  bool operator==(const ChannelNumbers&) const = default;

 private:
  int n_;
  int l_;
  int s_;
};

/// Lexicographic (n, l, s) with s = +1 ordered before s = -1.
std::strong_ordering channel_order(const ChannelNumbers& a, const ChannelNumbers& b) noexcept;

/// Coefficients of one (l, s) channel of the radial equation.
struct ChannelCoefficients {
  double zeta;   ///< l + (1 - s)/2 - phi/phi0
  double tau;    ///< zeta + s sqrt(2 m a1)
  double omega;  ///< sqrt(8 a2 / m)
  /// E^2 - m^2 - nu: 2 s sqrt(2 m a2) zeta + 2 sqrt(2 m a2) + 4 m sqrt(a1 a2).
  double shift;
};

ChannelCoefficients derive_channel(const PhysicalParams& params, const ChannelNumbers& nums) noexcept;

double flux_quantum(const PhysicalParams& params) noexcept;

/// sqrt(2 m a2), the scale relating mu to rho^2.
inline double confinement_scale(const PhysicalParams& p) noexcept { return std::sqrt(2.0 * p.m() * p.a2()); }
/// sqrt(2 m a1), the strength of the 1/rho coupling.
inline double radial_coupling(const PhysicalParams& p) noexcept { return std::sqrt(2.0 * p.m() * p.a1()); }

/// Oscillator length (2 m a2)^(-1/4). Requires a2 > 0.
double oscillator_length(const PhysicalParams& params);

/// Throws NoBoundStates when a2 == 0.
void require_confinement(const PhysicalParams& params);

}  // namespace dirac_ring
