#pragma once

// Closed-form bound-state energies of the ring model and its limits.

#include <string_view>
#include <vector>

#include "dirac_ring/model.hpp"

namespace dirac_ring {

enum class Branch { positive, negative };

enum class Regime { ring, dot, nonrel_ring, nonrel_dot };

std::string_view to_string(Regime r) noexcept;

struct EnergyLevel {
  ChannelNumbers nums;
  double energy;
  Branch branch;
  Regime regime;
};

/// n + |tau|/2 + s zeta/2 + 1, shared by all four regimes.
double spectral_bracket(const ChannelCoefficients& ch, const ChannelNumbers& nums) noexcept;

/// E^2 = m^2 + 4 sqrt(2 m a2) [n + |tau|/2 + s zeta/2 + 1] + 4 m sqrt(a1 a2).
/// Throws NoBoundStates when a2 == 0.
EnergyLevel ring_energy(const PhysicalParams& params, const ChannelNumbers& nums,
                        Branch branch = Branch::positive);

/// Quantum-dot limit: ring_energy with a1 forced to zero.
EnergyLevel dot_energy(const PhysicalParams& params, const ChannelNumbers& nums,
                       Branch branch = Branch::positive);

/// E = m + sqrt(8 a2/m) [n + |tau|/2 + s zeta/2 + 1] + 2 sqrt(a1 a2).
EnergyLevel nonrel_ring_energy(const PhysicalParams& params, const ChannelNumbers& nums);

EnergyLevel nonrel_dot_energy(const PhysicalParams& params, const ChannelNumbers& nums);

/// Dispatches on regime (positive branch).
EnergyLevel level_energy(const PhysicalParams& params, const ChannelNumbers& nums, Regime regime);

struct ChannelRange {
  int n_max = 0;
  int l_min = 0;
  int l_max = 0;
  std::vector<int> spins{1, -1};
};

struct SpectrumTable {
  PhysicalParams params;
  std::vector<EnergyLevel> levels;  ///< ascending energy, ties by channel_order
};

/// All positive-branch levels of `regime` over the range, sorted.
SpectrumTable enumerate_spectrum(const PhysicalParams& params, const ChannelRange& range,
                                 Regime regime = Regime::ring);

/// |E_{n,l}(phi - phi0) - E_{n,l+1}(phi)| <= tol * |E_{n,l+1}(phi)|.
bool verify_flux_periodicity(const PhysicalParams& params, const ChannelNumbers& nums, double rel_tol,
                             Regime regime = Regime::ring);

}  // namespace dirac_ring
