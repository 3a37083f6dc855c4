#pragma once

// Real symmetric tridiagonal matrices: Sturm counts, Gershgorin bounds,
// bisection for selected eigenvalues, inverse iteration for eigenvectors.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace dirac_ring::tridiagonal {

struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  ///< off[i] couples rows i and i+1; size diag.size() - 1

  std::size_t size() const noexcept { return diag.size(); }
};

/// Number of eigenvalues strictly below lambda (LDL^T pivot signs).
std::size_t sturm_count(const SymTridiagonal& t, double lambda) noexcept;

/// Interval [lo, hi] containing the whole spectrum.
std::pair<double, double> gershgorin_bounds(const SymTridiagonal& t) noexcept;

/// The `count` smallest eigenvalues in ascending order, each bisected until the
/// bracket is narrower than rel_tol * |lambda| (and never below a few ulps).
std::vector<double> lowest_eigenvalues(const SymTridiagonal& t, std::size_t count, double rel_tol = 1e-12);

/// Unit eigenvector for a converged eigenvalue, by two steps of inverse iteration.
std::vector<double> eigenvector(const SymTridiagonal& t, double lambda);

/// y = T x
std::vector<double> multiply(const SymTridiagonal& t, std::span<const double> x);

}  // namespace dirac_ring::tridiagonal
