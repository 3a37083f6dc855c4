#pragma once

// Kummer's confluent hypergeometric function M(a, b, x) = 1F1(a; b; x).

#include <cstddef>
#include <optional>

namespace dirac_ring::special {

struct KummerArgs {
  double a;
  double b;
  double x;
};

struct KummerOptions {
  double rel_tol = 1e-14;
  std::size_t max_terms = 10'000;
};

struct KummerResult {
  double value;
  /// Number of series terms accumulated (n + 1 for the polynomial case a = -n).
  std::size_t terms;
};

/// Power series sum_j (a)_j/(b)_j x^j/j!, accumulated with Neumaier
/// compensation. Terminates exactly when a is a nonpositive integer; otherwise
/// stops once three consecutive terms fall below rel_tol * |sum|. For x < 0
/// the non-polynomial case is summed as e^x M(b-a, b, -x).
///
/// Throws InvalidB when b is zero or a negative integer, NonconvergentSeries
/// when max_terms is exceeded.
KummerResult kummer_m_detailed(const KummerArgs& args, const KummerOptions& opts = {});

inline double kummer_m(const KummerArgs& args, const KummerOptions& opts = {}) {
  return kummer_m_detailed(args, opts).value;
}

/// Degree n when a == -n for an integer n >= 0 (absolute tolerance 1e-12).
std::optional<int> kummer_is_polynomial(double a) noexcept;

/// dM/dx = (a/b) M(a+1, b+1, x).
double kummer_m_derivative(const KummerArgs& args, const KummerOptions& opts = {});

}  // namespace dirac_ring::special
