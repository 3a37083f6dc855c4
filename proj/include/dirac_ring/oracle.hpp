#pragma once

// Independent finite-difference eigensolver for the radial equation
//
//   R'' + R'/rho - tau^2 R/rho^2 - 2 m a2 rho^2 R + nu R = 0,
//
// used to check closed-form energies without relying on the hypergeometric
// quantization argument. Only tau^2 enters, so results are even in tau.

#include <optional>
#include <string_view>
#include <vector>

#include "dirac_ring/model.hpp"
#include "dirac_ring/tridiagonal.hpp"

namespace dirac_ring::oracle {

/// Uniform radial grid rho_min, rho_min + h, ..., rho_max.
struct GridSpec {
  double rho_min;
  double rho_max;
  int points;

  /// Throws InvalidParams unless 0 < rho_min < rho_max and points >= 3.
  void validate() const;
  double step() const noexcept { return (rho_max - rho_min) / (points - 1); }
  double node(int i) const noexcept { return rho_min + i * step(); }
  /// Same interval with the step halved (2 points - 1 nodes).
  GridSpec refined() const noexcept { return {rho_min, rho_max, 2 * points - 1}; }
};

/// rho_min = 1e-4 L, rho_max = 8 L, 8001 points, with L = (2 m a2)^(-1/4).
/// mu = sqrt(2 m a2) rho^2 reaches 64 at the outer edge.
GridSpec default_grid(const PhysicalParams& params);

enum class OracleScheme {
  /// Cell-centred finite volumes for w = R / rho^|tau| on [0, rho_max]; the
  /// origin needs no boundary condition (flux weight rho^(2|tau|+1) vanishes).
  /// rho_min is ignored; the cell width equals the grid step for rho_min -> 0.
  regularized,
  /// Three-point stencil for u = sqrt(rho) R with u(rho_min) = u(rho_max) = 0.
  /// Accurate only when the irregular solution rho^(-|tau|) is strongly
  /// suppressed at rho_min, i.e. |tau| >~ 1.
  liouville,
};

std::string_view to_string(OracleScheme s) noexcept;

struct OracleOptions {
  OracleScheme scheme = OracleScheme::regularized;
  /// When set, the solve is repeated on grid.refined() and GridTooCoarse is
  /// thrown if any eigenvalue moves by more than this relative amount.
  std::optional<double> richardson_tol;
  /// DomainTooSmall when |R(rho_max side)| / max |R| exceeds this.
  double boundary_tol = 1e-10;
  double bisection_rel_tol = 1e-12;
};

struct NuEigenvalues {
  ChannelCoefficients channel;
  std::vector<double> values;  ///< ascending
  GridSpec grid;
  OracleScheme scheme;
  std::optional<std::vector<double>> refined_values;
  /// Largest boundary-to-peak amplitude ratio over the returned states.
  double boundary_amplitude = 0.0;
};

/// Discretized operator for one channel, already symmetrized.
tridiagonal::SymTridiagonal radial_operator(const PhysicalParams& params, const ChannelCoefficients& channel,
                                            const GridSpec& grid, OracleScheme scheme);

/// Radial sample positions matching the rows of radial_operator().
std::vector<double> operator_nodes(const PhysicalParams& params, const ChannelCoefficients& channel,
                                   const GridSpec& grid, OracleScheme scheme);

/// Lowest `count` eigenvalues nu_k; the exact values are 4 sqrt(2 m a2) (k + |tau|/2 + 1/2).
/// Throws NoBoundStates, GridTooCoarse, DomainTooSmall.
NuEigenvalues fd_nu_eigenvalues(const PhysicalParams& params, const ChannelCoefficients& channel,
                                const GridSpec& grid, int count, const OracleOptions& opts = {});

/// E = +sqrt(nu + m^2 + shift). Throws NegativeEnergySquared.
double energy_from_nu(double nu, const PhysicalParams& params, const ChannelCoefficients& channel);

struct CrosscheckReport {
  ChannelNumbers nums;
  double tau;
  double closed_form;
  double oracle;
  double abs_deviation;
  double rel_deviation;
  double tolerance;  ///< tolerance actually applied
  bool loosened;     ///< |tau| < 1/2: tolerance multiplied by 10
  bool pass;
};

/// Closed-form ring energy against the oracle eigenvalue with index n.
CrosscheckReport crosscheck_channel(const PhysicalParams& params, const ChannelNumbers& nums, const GridSpec& grid,
                                    double tol, const OracleOptions& opts = {});

}  // namespace dirac_ring::oracle
