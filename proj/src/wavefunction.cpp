#include "dirac_ring/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "dirac_ring/errors.hpp"
#include "dirac_ring/special.hpp"
#include "dirac_ring/spectrum.hpp"

namespace dirac_ring::wavefunction {

namespace {

double envelope(double t, double c, double rho) {
  const double mu = c * rho * rho;
  return std::exp(-0.5 * mu + 0.5 * t * std::log(mu));
}

double kummer(double a, double b, double mu) { return special::kummer_m({a, b, mu}); }

double boundary_fraction(const std::vector<cplx>& v) {
  double peak = 0.0;
  for (const auto& z : v) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) return 0.0;
  return std::abs(v.back()) / peak;
}

using Pair = std::array<cplx, 2>;

Pair sigma1(const Pair& v) { return {v[1], v[0]}; }
Pair sigma2(const Pair& v) { return {cplx(0, -1) * v[1], cplx(0, 1) * v[0]}; }

}  // namespace

cplx RadialExpansion::value(double rho) const {
  const double mu = c * rho * rho;
  cplx sum = 0.0;
  for (const auto& term : terms) sum += term.coef * std::pow(rho, term.power) * kummer(term.a, term.b, mu);
  return envelope(t, c, rho) * sum;
}

cplx RadialExpansion::derivative(double rho) const {
  const double mu = c * rho * rho;
  cplx sum = 0.0;
  cplx dsum = 0.0;
  for (const auto& term : terms) {
    const double m = kummer(term.a, term.b, mu);
    const double rp = std::pow(rho, term.power);
    sum += term.coef * rp * m;
    double dm = 0.0;
    if (term.a != 0.0) dm = term.a / term.b * kummer(term.a + 1.0, term.b + 1.0, mu) * 2.0 * c * rho;
    dsum += term.coef * (term.power * std::pow(rho, term.power - 1) * m + rp * dm);
  }
  // d/drho [e^(-mu/2) mu^(t/2)] = (-c rho + t/rho) e^(-mu/2) mu^(t/2)
  return envelope(t, c, rho) * ((-c * rho + t / rho) * sum + dsum);
}

double radial_norm_constant(const PhysicalParams& params, const ChannelNumbers& nums) {
  require_confinement(params);
  const double t = std::abs(derive_channel(params, nums).tau);
  const double n = nums.n();
  const double log_n2 = std::log(2.0 * confinement_scale(params)) + std::lgamma(n + t + 1.0) -
                        std::lgamma(n + 1.0) - 2.0 * std::lgamma(t + 1.0);
  return std::exp(0.5 * log_n2);
}

RadialFunction radial_function(const PhysicalParams& params, const ChannelNumbers& nums, const GridSpec& grid) {
  require_confinement(params);
  grid.validate();
  const auto ch = derive_channel(params, nums);
  const double norm = radial_norm_constant(params, nums);
  const RadialExpansion profile{std::abs(ch.tau), confinement_scale(params),
                                {{norm, 0, -static_cast<double>(nums.n()), std::abs(ch.tau) + 1.0}}};
  RadialFunction out{grid, {}, ch, nums, norm};
  out.values.resize(grid.points);
  for (int i = 0; i < grid.points; ++i) out.values[i] = profile.value(grid.node(i)).real();
  return out;
}

double radial_integral(const GridSpec& grid, std::span<const double> f, double small_rho_power) {
  const int n = grid.points;
  if (static_cast<int>(f.size()) != n) throw InvalidParams("integrand", "size does not match grid");
  const double h = grid.step();
  const int intervals = n - 1;
  const int simpson_end = intervals % 2 == 0 ? intervals : intervals - 3;
  double sum = 0.0;
  for (int i = 0; i + 2 <= simpson_end; i += 2) sum += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
  if (simpson_end != intervals) {
    const int i = simpson_end;
    sum += 3.0 * h / 8.0 * (f[i] + 3.0 * f[i + 1] + 3.0 * f[i + 2] + f[i + 3]);
  }
  sum += f[0] * grid.rho_min / (small_rho_power + 1.0);
  return sum;
}

double norm_integral(const RadialFunction& r) {
  std::vector<double> f(r.values.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = r.values[i] * r.values[i] * r.grid.node(static_cast<int>(i));
  return radial_integral(r.grid, f, 2.0 * std::abs(r.channel.tau) + 1.0);
}

double overlap(const RadialFunction& r1, const RadialFunction& r2) {
  if (r1.values.size() != r2.values.size()) throw InvalidParams("overlap", "grids differ");
  std::vector<double> f(r1.values.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = r1.values[i] * r2.values[i] * r1.grid.node(static_cast<int>(i));
  const double p = std::abs(r1.channel.tau) + std::abs(r2.channel.tau) + 1.0;
  return radial_integral(r1.grid, f, p);
}

int node_count(std::span<const double> values) {
  int nodes = 0;
  double last = 0.0;
  for (double v : values) {
    if (v == 0.0) continue;
    if (last != 0.0 && (v < 0.0) != (last < 0.0)) ++nodes;
    last = v;
  }
  return nodes;
}

Spinor4 build_spinor(const PhysicalParams& params, const ChannelNumbers& nums, double energy, const GridSpec& grid,
                     const SpinorOptions& opts) {
  require_confinement(params);
  grid.validate();
  const auto ch = derive_channel(params, nums);
  const double t = std::abs(ch.tau);
  const double c = confinement_scale(params);
  const double a = radial_coupling(params);
  const double b = t + 1.0;
  const double n = nums.n();
  const double amplitude = radial_norm_constant(params, nums) / std::sqrt(2.0 * std::numbers::pi);
  const cplx small = cplx(0.0, 1.0) / (energy + params.m()) * amplitude;

  Spinor4 sp;
  sp.grid = grid;
  sp.energy = energy;
  sp.nums = nums;
  sp.channel = ch;
  for (auto& p : sp.profiles) p = RadialExpansion{t, c, {}};

  const int large_index = nums.s() == 1 ? 0 : 1;
  const int small_index = nums.s() == 1 ? 3 : 2;
  sp.profiles[large_index].terms.push_back({amplitude, 0, -n, b});

  auto& lower = sp.profiles[small_index].terms;
  lower.push_back({small * 2.0 * c, 1, -n, b});
  // 1/rho coefficient: (zeta+ - |tau+| + a) for s = +1, -(zeta- + |tau-| - a) for s = -1.
  const double inverse = nums.s() == 1 ? ch.zeta - t + a : -(ch.zeta + t - a);
  if (inverse != 0.0) lower.push_back({small * inverse, -1, -n, b});
  if (nums.n() > 0) {
    const double b_contig = opts.contiguous == ContiguousParameter::derivative ? b + 1.0 : b;
    lower.push_back({small * (2.0 * n * c / b), 1, -n + 1.0, b_contig});
  }

  for (int k = 0; k < 4; ++k) {
    auto& comp = sp.components[k];
    comp.assign(grid.points, cplx(0.0));
    if (sp.profiles[k].empty()) continue;
    for (int i = 0; i < grid.points; ++i) comp[i] = sp.profiles[k].value(grid.node(i));
    if (const double frac = boundary_fraction(comp); frac > opts.boundary_tol) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3g", frac);
      throw DomainTooSmall("spinor component " + std::to_string(k) + " retains " + buf +
                           " of its peak at rho_max");
    }
  }
  return sp;
}

GridSpec spinor_grid(const PhysicalParams& params, const ChannelNumbers& nums) {
  require_confinement(params);
  const auto base = oracle::default_grid(params);
  const double length = oscillator_length(params);
  const double energy = ring_energy(params, nums).energy;
  const SpinorOptions unchecked{.boundary_tol = std::numeric_limits<double>::infinity()};
  for (double rho_max = base.rho_max;; rho_max += length) {
    const auto probe = build_spinor(params, nums, energy, {base.rho_min, rho_max, 2001}, unchecked);
    double worst = 0.0;
    for (const auto& comp : probe.components) worst = std::max(worst, boundary_fraction(comp));
    if (worst < 1e-11 || rho_max > 64.0 * length) {
      const int points = static_cast<int>(std::lround((rho_max - base.rho_min) / base.step())) + 1;
      return {base.rho_min, rho_max, points};
    }
  }
}

cplx evaluate(const Spinor4& spinor, int component, double rho, double varphi) {
  const double j = spinor.nums.l() + 0.5;
  return spinor.profiles.at(component).value(rho) * std::polar(1.0, j * varphi);
}

DiracResidual dirac_residual(const Spinor4& spinor, const PhysicalParams& params) {
  const auto& grid = spinor.grid;
  const double m = params.m();
  const double e = spinor.energy;
  const double a = radial_coupling(params);
  const double c = confinement_scale(params);
  // (d/dvarphi - i phi/phi0) acting on e^(i(l+1/2)varphi)
  const cplx angular(0.0, spinor.nums.l() + 0.5 - params.phi_over_phi0());
  const cplx minus_i(0.0, -1.0);

  auto sample = [&](int k, double rho, bool deriv) {
    const auto& p = spinor.profiles[k];
    if (p.empty()) return cplx(0.0);
    return deriv ? p.derivative(rho) : p.value(rho);
  };

  std::vector<double> res1(grid.points), res2(grid.points), ref(grid.points);
  for (int i = 0; i < grid.points; ++i) {
    const double rho = grid.node(i);
    const Pair eta{sample(0, rho, false), sample(1, rho, false)};
    const Pair deta{sample(0, rho, true), sample(1, rho, true)};
    const Pair chi{sample(2, rho, false), sample(3, rho, false)};
    const Pair dchi{sample(2, rho, true), sample(3, rho, true)};
    const double coupling = a / rho + c * rho;

    Pair radial_chi, radial_eta;
    for (int r = 0; r < 2; ++r) {
      radial_chi[r] = dchi[r] + chi[r] / (2.0 * rho) + coupling * chi[r];
      radial_eta[r] = deta[r] + eta[r] / (2.0 * rho) - coupling * eta[r];
    }
    const Pair s1_chi = sigma1(radial_chi), s2_chi = sigma2(chi);
    const Pair s1_eta = sigma1(radial_eta), s2_eta = sigma2(eta);

    double n1 = 0.0, n2 = 0.0, nref = 0.0;
    for (int r = 0; r < 2; ++r) {
      const cplx rhs5 = minus_i * s1_chi[r] + minus_i * s2_chi[r] * angular / rho;
      const cplx rhs6 = minus_i * s1_eta[r] + minus_i * s2_eta[r] * angular / rho;
      n1 += std::norm((e - m) * eta[r] - rhs5);
      n2 += std::norm((e + m) * chi[r] - rhs6);
      nref += std::norm((e + m) * eta[r]);
    }
    res1[i] = n1 * rho;
    res2[i] = n2 * rho;
    ref[i] = nref * rho;
  }
  const double denom = radial_integral(grid, ref, 1.0);
  if (denom == 0.0) return {0.0, 0.0, true};
  return {std::sqrt(radial_integral(grid, res1, 1.0) / denom), std::sqrt(radial_integral(grid, res2, 1.0) / denom),
          false};
}

}  // namespace dirac_ring::wavefunction
