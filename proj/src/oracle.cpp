#include "dirac_ring/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dirac_ring/errors.hpp"
#include "dirac_ring/spectrum.hpp"

namespace dirac_ring::oracle {

namespace {

// log((i+1)^k - i^k) without forming the powers.
double log_power_step(int i, double k) noexcept {
  if (i == 0) return 0.0;
  const double id = i;
  return k * std::log(id + 1.0) + std::log(-std::expm1(-k * std::log1p(1.0 / id)));
}

struct RegularizedLayout {
  int cells;
  double h;
  double t;  // |tau|
};

RegularizedLayout regularized_layout(const ChannelCoefficients& ch, const GridSpec& grid) {
  const int cells = grid.points - 1;
  return {cells, grid.rho_max / cells, std::abs(ch.tau)};
}

// -(rho^(2t+1) w')' + c^2 rho^(2t+3) w = nu rho^(2t+1) w, integrated over
// cells [i h, (i+1) h]. Row i is scaled by the cell weight^(-1/2) on both sides.
tridiagonal::SymTridiagonal regularized_operator(double c, const RegularizedLayout& lay) {
  const double k = 2.0 * lay.t + 2.0;
  const double h2 = lay.h * lay.h;
  const int n = lay.cells;
  tridiagonal::SymTridiagonal op;
  op.diag.resize(n);
  op.off.resize(n - 1);
  std::vector<double> ld(n + 1);
  for (int i = 0; i <= n; ++i) ld[i] = log_power_step(i, k);
  for (int i = 0; i < n; ++i) {
    const double inner = i == 0 ? 0.0 : std::exp((k - 1.0) * std::log(double(i)) - ld[i]);
    // Outer face of the last cell sits half a cell from the Dirichlet node.
    const double outer_factor = i == n - 1 ? 2.0 : 1.0;
    const double outer = outer_factor * std::exp((k - 1.0) * std::log(i + 1.0) - ld[i]);
    const double potential = c * c * h2 * k / (k + 2.0) * std::exp(log_power_step(i, k + 2.0) - ld[i]);
    op.diag[i] = k / h2 * (inner + outer) + potential;
    if (i + 1 < n) op.off[i] = -k / h2 * std::exp((k - 1.0) * std::log(i + 1.0) - 0.5 * (ld[i] + ld[i + 1]));
  }
  return op;
}

tridiagonal::SymTridiagonal liouville_operator(double c, double tau, const GridSpec& grid) {
  const int n = grid.points - 2;
  const double h = grid.step();
  const double inv_h2 = 1.0 / (h * h);
  tridiagonal::SymTridiagonal op;
  op.diag.resize(n);
  op.off.assign(n - 1, -inv_h2);
  for (int i = 0; i < n; ++i) {
    const double rho = grid.node(i + 1);
    op.diag[i] = 2.0 * inv_h2 + (tau * tau - 0.25) / (rho * rho) + c * c * rho * rho;
  }
  return op;
}

// |R| at the outermost unknown relative to its peak, from a symmetrized eigenvector.
double boundary_ratio(const std::vector<double>& vec, const std::vector<double>& log_scale) {
  double peak = -INFINITY;
  std::vector<double> logs(vec.size());
  for (std::size_t i = 0; i < vec.size(); ++i) {
    logs[i] = vec[i] == 0.0 ? -INFINITY : std::log(std::abs(vec[i])) + log_scale[i];
    peak = std::max(peak, logs[i]);
  }
  return std::exp(logs.back() - peak);
}

// log of the factor taking a symmetrized eigenvector component to R.
std::vector<double> log_to_radial(const ChannelCoefficients& ch, const GridSpec& grid, OracleScheme scheme) {
  std::vector<double> out;
  if (scheme == OracleScheme::regularized) {
    const auto lay = regularized_layout(ch, grid);
    const double k = 2.0 * lay.t + 2.0;
    out.resize(lay.cells);
    for (int i = 0; i < lay.cells; ++i) {
      const double log_weight = k * std::log(lay.h) + log_power_step(i, k) - std::log(k);
      out[i] = -0.5 * log_weight + lay.t * std::log((i + 0.5) * lay.h);
    }
  } else {
    out.resize(grid.points - 2);
    for (int i = 0; i < grid.points - 2; ++i) out[i] = -0.5 * std::log(grid.node(i + 1));
  }
  return out;
}

std::vector<double> solve(const PhysicalParams& params, const ChannelCoefficients& channel, const GridSpec& grid,
                          int count, const OracleOptions& opts, double* boundary) {
  const auto op = radial_operator(params, channel, grid, opts.scheme);
  if (static_cast<std::size_t>(count) > op.size()) {
    throw InvalidParams("count", "more eigenvalues requested than grid unknowns");
  }
  auto values = tridiagonal::lowest_eigenvalues(op, count, opts.bisection_rel_tol);
  if (boundary) {
    const auto scale = log_to_radial(channel, grid, opts.scheme);
    double worst = 0.0;
    for (double v : values) worst = std::max(worst, boundary_ratio(tridiagonal::eigenvector(op, v), scale));
    *boundary = worst;
  }
  return values;
}

}  // namespace

void GridSpec::validate() const {
  if (!(rho_min > 0.0)) throw InvalidParams("rho_min", "must be positive");
  if (!(rho_min < rho_max)) throw InvalidParams("rho_max", "must exceed rho_min");
  if (points < 3) throw InvalidParams("points", "need at least 3 grid points");
}

GridSpec default_grid(const PhysicalParams& params) {
  const double length = oscillator_length(params);
  return {1e-4 * length, 8.0 * length, 8001};
}

std::string_view to_string(OracleScheme s) noexcept {
  return s == OracleScheme::regularized ? "regularized" : "liouville";
}

tridiagonal::SymTridiagonal radial_operator(const PhysicalParams& params, const ChannelCoefficients& channel,
                                            const GridSpec& grid, OracleScheme scheme) {
  grid.validate();
  const double c = confinement_scale(params);
  if (scheme == OracleScheme::regularized) return regularized_operator(c, regularized_layout(channel, grid));
  return liouville_operator(c, channel.tau, grid);
}

std::vector<double> operator_nodes(const PhysicalParams&, const ChannelCoefficients& channel, const GridSpec& grid,
                                   OracleScheme scheme) {
  grid.validate();
  std::vector<double> nodes;
  if (scheme == OracleScheme::regularized) {
    const auto lay = regularized_layout(channel, grid);
    for (int i = 0; i < lay.cells; ++i) nodes.push_back((i + 0.5) * lay.h);
  } else {
    for (int i = 1; i + 1 < grid.points; ++i) nodes.push_back(grid.node(i));
  }
  return nodes;
}

NuEigenvalues fd_nu_eigenvalues(const PhysicalParams& params, const ChannelCoefficients& channel,
                                const GridSpec& grid, int count, const OracleOptions& opts) {
  require_confinement(params);
  if (count < 1) throw InvalidParams("count", "must be >= 1");
  grid.validate();

  NuEigenvalues out{channel, {}, grid, opts.scheme, std::nullopt, 0.0};
  out.values = solve(params, channel, grid, count, opts, &out.boundary_amplitude);
  if (out.boundary_amplitude > opts.boundary_tol) {
    throw DomainTooSmall("oracle: boundary amplitude " + std::to_string(out.boundary_amplitude) +
                         " exceeds " + std::to_string(opts.boundary_tol) + "; enlarge rho_max");
  }
  if (opts.richardson_tol) {
    auto fine = solve(params, channel, grid.refined(), count, opts, nullptr);
    for (int k = 0; k < count; ++k) {
      const double dev = std::abs(out.values[k] - fine[k]) / std::max(std::abs(fine[k]), 1e-300);
      if (dev > *opts.richardson_tol) {
        throw GridTooCoarse("oracle: eigenvalue " + std::to_string(k) + " moved by relative " + std::to_string(dev) +
                            " under grid halving");
      }
    }
    out.refined_values = std::move(fine);
  }
  return out;
}

double energy_from_nu(double nu, const PhysicalParams& params, const ChannelCoefficients& channel) {
  const double radicand = nu + params.m() * params.m() + channel.shift;
  if (radicand < 0.0) throw NegativeEnergySquared("energy_from_nu: E^2 = " + std::to_string(radicand) + " < 0");
  return std::sqrt(radicand);
}

CrosscheckReport crosscheck_channel(const PhysicalParams& params, const ChannelNumbers& nums, const GridSpec& grid,
                                    double tol, const OracleOptions& opts) {
  const double closed = ring_energy(params, nums).energy;
  const auto channel = derive_channel(params, nums);
  const auto nus = fd_nu_eigenvalues(params, channel, grid, nums.n() + 1, opts);
  const double numeric = energy_from_nu(nus.values[nums.n()], params, channel);

  CrosscheckReport r{nums, channel.tau, closed, numeric, 0.0, 0.0, tol, false, false};
  r.abs_deviation = std::abs(closed - numeric);
  r.rel_deviation = r.abs_deviation / std::abs(closed);
  r.loosened = std::abs(channel.tau) < 0.5;
  if (r.loosened) r.tolerance *= 10.0;
  r.pass = r.rel_deviation <= r.tolerance;
  return r;
}

}  // namespace dirac_ring::oracle
