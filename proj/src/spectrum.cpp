#include "dirac_ring/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "dirac_ring/errors.hpp"

namespace dirac_ring {

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::ring: return "ring";
    case Regime::dot: return "dot";
    case Regime::nonrel_ring: return "nonrel_ring";
    case Regime::nonrel_dot: return "nonrel_dot";
  }
  return "?";
}

double spectral_bracket(const ChannelCoefficients& ch, const ChannelNumbers& nums) noexcept {
  return nums.n() + std::abs(ch.tau) / 2.0 + nums.s() * ch.zeta / 2.0 + 1.0;
}

EnergyLevel ring_energy(const PhysicalParams& params, const ChannelNumbers& nums, Branch branch) {
  require_confinement(params);
  const auto ch = derive_channel(params, nums);
  const double m = params.m();
  const double bracket = spectral_bracket(ch, nums);
  const double e2 = m * m + 4.0 * confinement_scale(params) * bracket +
                    4.0 * m * std::sqrt(params.a1() * params.a2());
  const double e = std::sqrt(e2);
  return {nums, branch == Branch::positive ? e : -e, branch, Regime::ring};
}

EnergyLevel dot_energy(const PhysicalParams& params, const ChannelNumbers& nums, Branch branch) {
  auto level = ring_energy(params.with_a1(0.0), nums, branch);
  level.regime = Regime::dot;
  return level;
}

EnergyLevel nonrel_ring_energy(const PhysicalParams& params, const ChannelNumbers& nums) {
  require_confinement(params);
  const auto ch = derive_channel(params, nums);
  const double e = params.m() + ch.omega * spectral_bracket(ch, nums) + 2.0 * std::sqrt(params.a1() * params.a2());
  return {nums, e, Branch::positive, Regime::nonrel_ring};
}

EnergyLevel nonrel_dot_energy(const PhysicalParams& params, const ChannelNumbers& nums) {
  auto level = nonrel_ring_energy(params.with_a1(0.0), nums);
  level.regime = Regime::nonrel_dot;
  return level;
}

EnergyLevel level_energy(const PhysicalParams& params, const ChannelNumbers& nums, Regime regime) {
  switch (regime) {
    case Regime::ring: return ring_energy(params, nums);
    case Regime::dot: return dot_energy(params, nums);
    case Regime::nonrel_ring: return nonrel_ring_energy(params, nums);
    case Regime::nonrel_dot: return nonrel_dot_energy(params, nums);
  }
  return ring_energy(params, nums);
}

SpectrumTable enumerate_spectrum(const PhysicalParams& params, const ChannelRange& range, Regime regime) {
  require_confinement(params);
  if (range.n_max < 0) throw InvalidParams("n_max", "must be >= 0");
  if (range.l_min > range.l_max) throw InvalidParams("l_range", "l_min must not exceed l_max");

  SpectrumTable table{params, {}};
  for (int n = 0; n <= range.n_max; ++n) {
    for (int l = range.l_min; l <= range.l_max; ++l) {
      for (int s : range.spins) table.levels.push_back(level_energy(params, ChannelNumbers(n, l, s), regime));
    }
  }
  std::sort(table.levels.begin(), table.levels.end(), [](const EnergyLevel& a, const EnergyLevel& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return channel_order(a.nums, b.nums) < 0;
  });
  // Duplicate spins in the request would produce identical rows.
  table.levels.erase(std::unique(table.levels.begin(), table.levels.end(),
                                 [](const EnergyLevel& a, const EnergyLevel& b) { return a.nums == b.nums; }),
                     table.levels.end());
  return table;
}

bool verify_flux_periodicity(const PhysicalParams& params, const ChannelNumbers& nums, double rel_tol,
                             Regime regime) {
  const auto shifted = level_energy(params.with_phi(params.phi() - params.phi0()), nums, regime);
  const auto next = level_energy(params, ChannelNumbers(nums.n(), nums.l() + 1, nums.s()), regime);
  return std::abs(shifted.energy - next.energy) <= rel_tol * std::abs(next.energy);
}

}  // namespace dirac_ring
