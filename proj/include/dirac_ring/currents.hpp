#pragma once

// Persistent currents I = -sum dE/dphi over an occupied set of levels.

#include <string>
#include <vector>

#include "dirac_ring/model.hpp"
#include "dirac_ring/spectrum.hpp"

namespace dirac_ring::currents {

struct OccupationSet {
  std::vector<ChannelNumbers> levels;
  std::string description;

  /// Throws InvalidParams on a repeated (n, l, s).
  void validate() const;
};

/// The `count` lowest ring levels at the current flux, drawn from `range`.
OccupationSet lowest_levels(const PhysicalParams& params, const ChannelRange& range, std::size_t count);

enum class Method { analytic, finite_difference };

struct CurrentReport {
  std::vector<double> contributions;
  double total;
  Method method;
  double phi;
};

/// -dE/dphi = (|q|/2pi) sqrt(2 m a2) (sgn tau + s) / E.
/// Throws TauZeroKink at tau == 0 and NoBoundStates when a2 == 0.
double level_current(const PhysicalParams& params, const ChannelNumbers& nums);

/// (|q|/4pi) sqrt(8 a2/m) (sgn tau + s); independent of n.
double nonrel_level_current(const PhysicalParams& params, const ChannelNumbers& nums);

/// Sums level_current in list order. Errors name the offending level.
CurrentReport total_current(const PhysicalParams& params, const OccupationSet& occ);

struct FiniteDifferenceCurrent {
  double value;  ///< -(E(phi+h) - E(phi-h)) / 2h
  /// tau changes sign inside [phi-h, phi+h]; value is then meaningless.
  bool kink_straddle;
  double backward;  ///< -(E(phi) - E(phi-h)) / h
  double forward;   ///< -(E(phi+h) - E(phi)) / h
};

FiniteDifferenceCurrent finite_difference_current(const PhysicalParams& params, const ChannelNumbers& nums,
                                                  double h, Regime regime = Regime::ring);

CurrentReport finite_difference_total(const PhysicalParams& params, const OccupationSet& occ, double h);

}  // namespace dirac_ring::currents
