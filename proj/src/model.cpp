#include "dirac_ring/model.hpp"

#include <cmath>

#include "dirac_ring/errors.hpp"

namespace dirac_ring {

namespace {

void require_finite(const char* field, double v) {
  if (!std::isfinite(v)) throw InvalidParams(field, "must be finite");
}

}  // namespace

PhysicalParams::PhysicalParams(double m, double a1, double a2, double q, double phi, double k)
    : m_(m), a1_(a1), a2_(a2), q_(q), phi_(phi), k_(k) {
  require_finite("m", m);
  require_finite("a1", a1);
  require_finite("a2", a2);
  require_finite("q", q);
  require_finite("phi", phi);
  require_finite("k", k);
  if (m <= 0.0) throw InvalidParams("m", "mass must be positive");
  if (a1 < 0.0) throw InvalidParams("a1", "control parameter must be nonnegative");
  if (a2 < 0.0) throw InvalidParams("a2", "control parameter must be nonnegative");
  if (q == 0.0) throw InvalidParams("q", "charge must be nonzero");
  if (k != 0.0) throw InvalidParams("k", "planar model: axial wavenumber must be 0");
}

ChannelNumbers::ChannelNumbers(int n, int l, int s) : n_(n), l_(l), s_(s) {
  if (n < 0) throw InvalidParams("n", "radial quantum number must be >= 0");
  if (s != 1 && s != -1) throw InvalidParams("s", "spin projection must be +1 or -1");
}

std::strong_ordering channel_order(const ChannelNumbers& a, const ChannelNumbers& b) noexcept {
  if (auto c = a.n() <=> b.n(); c != 0) return c;
  if (auto c = a.l() <=> b.l(); c != 0) return c;
  // +1 first
  return b.s() <=> a.s();
}

ChannelCoefficients derive_channel(const PhysicalParams& params, const ChannelNumbers& nums) noexcept {
  const double s = nums.s();
  const double c = confinement_scale(params);
  ChannelCoefficients out{};
  out.zeta = (nums.l() + (1 - nums.s()) / 2) - params.phi_over_phi0();
  out.tau = out.zeta + s * radial_coupling(params);
  out.omega = std::sqrt(8.0 * params.a2() / params.m());
  out.shift = 2.0 * s * c * out.zeta + 2.0 * c + 4.0 * params.m() * std::sqrt(params.a1() * params.a2());
  return out;
}

double flux_quantum(const PhysicalParams& params) noexcept { return params.phi0(); }

double oscillator_length(const PhysicalParams& params) {
  require_confinement(params);
  return std::pow(2.0 * params.m() * params.a2(), -0.25);
}

void require_confinement(const PhysicalParams& params) {
  if (params.a2() == 0.0) throw NoBoundStates();
}

}  // namespace dirac_ring
