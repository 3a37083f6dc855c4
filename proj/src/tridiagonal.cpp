#include "dirac_ring/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dirac_ring::tridiagonal {

namespace {

double pivot_floor(const SymTridiagonal& t) noexcept {
  double emax = 1.0;
  for (double e : t.off) emax = std::max(emax, e * e);
  return std::numeric_limits<double>::min() * emax;
}

}  // namespace

std::size_t sturm_count(const SymTridiagonal& t, double lambda) noexcept {
  const double pivmin = pivot_floor(t);
  std::size_t negatives = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    q = t.diag[i] - lambda - (i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1] / q);
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++negatives;
  }
  return negatives;
}

std::pair<double, double> gershgorin_bounds(const SymTridiagonal& t) noexcept {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.off[i - 1]);
    if (i + 1 < t.size()) radius += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - radius);
    hi = std::max(hi, t.diag[i] + radius);
  }
  return {lo, hi};
}

std::vector<double> lowest_eigenvalues(const SymTridiagonal& t, std::size_t count, double rel_tol) {
  if (count > t.size()) throw std::invalid_argument("lowest_eigenvalues: count exceeds matrix order");
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const auto [glo, ghi] = gershgorin_bounds(t);
  const double pivmin = pivot_floor(t);

  std::vector<double> out;
  out.reserve(count);
  double lo_start = glo;
  for (std::size_t k = 0; k < count; ++k) {
    double lo = lo_start;
    double hi = ghi;
    for (int iter = 0; iter < 400; ++iter) {
      const double scale = std::max(std::abs(lo), std::abs(hi));
      if (hi - lo <= std::max(rel_tol * scale, 4.0 * eps * scale + pivmin)) break;
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (sturm_count(t, mid) >= k + 1) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    const double lambda = 0.5 * (lo + hi);
    out.push_back(lambda);
    // Eigenvalue k+1 lies above every point where at most k+1 eigenvalues are below.
    lo_start = lo;
  }
  return out;
}

std::vector<double> eigenvector(const SymTridiagonal& t, double lambda) {
  const std::size_t n = t.size();
  const double pivmin = std::max(pivot_floor(t), std::numeric_limits<double>::epsilon() *
                                                     std::max(1.0, std::abs(lambda)) * 1e-3);
  // LDL^T of (T - lambda I), reused for both sweeps.
  std::vector<double> piv(n);
  for (std::size_t i = 0; i < n; ++i) {
    double q = t.diag[i] - lambda - (i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1] / piv[i - 1]);
    if (std::abs(q) < pivmin) q = q < 0 ? -pivmin : pivmin;
    piv[i] = q;
  }
  std::vector<double> x(n, 1.0);
  for (int sweep = 0; sweep < 3; ++sweep) {
    // forward: L z = x
    for (std::size_t i = 1; i < n; ++i) x[i] -= t.off[i - 1] / piv[i - 1] * x[i - 1];
    // D L^T y = z
    x[n - 1] /= piv[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = x[i] / piv[i] - t.off[i] / piv[i] * x[i + 1];
    double norm = 0.0;
    for (double v : x) norm = std::max(norm, std::abs(v));
    for (double& v : x) v /= norm;
  }
  double norm2 = 0.0;
  for (double v : x) norm2 += v * v;
  norm2 = std::sqrt(norm2);
  // Fix the sign so the largest component is positive.
  const auto big = std::max_element(x.begin(), x.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  const double sign = *big < 0 ? -1.0 : 1.0;
  for (double& v : x) v *= sign / norm2;
  return x;
}

std::vector<double> multiply(const SymTridiagonal& t, std::span<const double> x) {
  const std::size_t n = t.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = t.diag[i] * x[i];
    if (i > 0) v += t.off[i - 1] * x[i - 1];
    if (i + 1 < n) v += t.off[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

}  // namespace dirac_ring::tridiagonal
