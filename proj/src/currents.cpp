#include "dirac_ring/currents.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <tuple>

#include "dirac_ring/errors.hpp"

namespace dirac_ring::currents {

namespace {

std::string label(const ChannelNumbers& nums) {
  return "(n=" + std::to_string(nums.n()) + ", l=" + std::to_string(nums.l()) + ", s=" + std::to_string(nums.s()) +
         ")";
}

double sign_factor(double sgn_tau, int s) { return sgn_tau + s; }

}  // namespace

void OccupationSet::validate() const {
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& lv : levels) {
    if (!seen.emplace(lv.n(), lv.l(), lv.s()).second) {
      throw InvalidParams("occupation", "duplicate level " + label(lv));
    }
  }
}

OccupationSet lowest_levels(const PhysicalParams& params, const ChannelRange& range, std::size_t count) {
  const auto table = enumerate_spectrum(params, range, Regime::ring);
  if (count > table.levels.size()) throw InvalidParams("lowest", "range holds fewer levels than requested");
  OccupationSet occ{{}, "lowest " + std::to_string(count) + " by energy"};
  for (std::size_t i = 0; i < count; ++i) occ.levels.push_back(table.levels[i].nums);
  return occ;
}

double level_current(const PhysicalParams& params, const ChannelNumbers& nums) {
  const double energy = ring_energy(params, nums).energy;
  const auto ch = derive_channel(params, nums);
  const double prefactor = std::abs(params.q()) / (2.0 * std::numbers::pi) * confinement_scale(params) / energy;
  if (ch.tau == 0.0) {
    throw TauZeroKink("level current at tau = 0 for " + label(nums), prefactor * sign_factor(1.0, nums.s()),
                      prefactor * sign_factor(-1.0, nums.s()));
  }
  return prefactor * sign_factor(ch.tau > 0 ? 1.0 : -1.0, nums.s());
}

double nonrel_level_current(const PhysicalParams& params, const ChannelNumbers& nums) {
  require_confinement(params);
  const auto ch = derive_channel(params, nums);
  const double prefactor = std::abs(params.q()) / (4.0 * std::numbers::pi) * ch.omega;
  if (ch.tau == 0.0) {
    throw TauZeroKink("nonrelativistic level current at tau = 0 for " + label(nums),
                      prefactor * sign_factor(1.0, nums.s()), prefactor * sign_factor(-1.0, nums.s()));
  }
  return prefactor * sign_factor(ch.tau > 0 ? 1.0 : -1.0, nums.s());
}

CurrentReport total_current(const PhysicalParams& params, const OccupationSet& occ) {
  occ.validate();
  CurrentReport report{{}, 0.0, Method::analytic, params.phi()};
  for (const auto& lv : occ.levels) {
    try {
      report.contributions.push_back(level_current(params, lv));
    } catch (const TauZeroKink& e) {
      throw TauZeroKink(std::string("total_current: ") + e.what(), e.from_below(), e.from_above());
    }
  }
  for (double c : report.contributions) report.total += c;
  return report;
}

FiniteDifferenceCurrent finite_difference_current(const PhysicalParams& params, const ChannelNumbers& nums,
                                                  double h, Regime regime) {
  if (!(h > 0.0)) throw InvalidParams("h", "finite-difference step must be positive");
  const double phi = params.phi();
  const auto lo_params = params.with_phi(phi - h);
  const auto hi_params = params.with_phi(phi + h);
  const double e_lo = level_energy(lo_params, nums, regime).energy;
  const double e_mid = level_energy(params, nums, regime).energy;
  const double e_hi = level_energy(hi_params, nums, regime).energy;

  const bool uses_a1 = regime == Regime::ring || regime == Regime::nonrel_ring;
  const auto tau_at = [&](const PhysicalParams& p) {
    return derive_channel(uses_a1 ? p : p.with_a1(0.0), nums).tau;
  };
  const double t_lo = tau_at(lo_params);
  const double t_hi = tau_at(hi_params);

  FiniteDifferenceCurrent out{};
  out.value = -(e_hi - e_lo) / (2.0 * h);
  out.backward = -(e_mid - e_lo) / h;
  out.forward = -(e_hi - e_mid) / h;
  out.kink_straddle = (t_lo > 0.0) != (t_hi > 0.0) || t_lo == 0.0 || t_hi == 0.0;
  return out;
}

CurrentReport finite_difference_total(const PhysicalParams& params, const OccupationSet& occ, double h) {
  occ.validate();
  CurrentReport report{{}, 0.0, Method::finite_difference, params.phi()};
  for (const auto& lv : occ.levels) report.contributions.push_back(finite_difference_current(params, lv, h).value);
  for (double c : report.contributions) report.total += c;
  return report;
}

}  // namespace dirac_ring::currents
