#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "dirac_ring/tridiagonal.hpp"
#include "doctest.h"

using namespace dirac_ring::tridiagonal;

namespace {

SymTridiagonal random_matrix(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  SymTridiagonal t;
  for (int i = 0; i < n; ++i) t.diag.push_back(3 * g(rng));
  for (int i = 0; i + 1 < n; ++i) t.off.push_back(g(rng));
  return t;
}

Eigen::VectorXd dense_eigenvalues(const SymTridiagonal& t) {
  const int n = static_cast<int>(t.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = t.diag[i];
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = t.off[i];
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues();
}

}  // namespace

TEST_CASE("bisection matches a dense eigensolver") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_matrix(rng, 10 + trial * 7);
    const auto dense = dense_eigenvalues(t);
    const auto bis = lowest_eigenvalues(t, 6);
    for (int k = 0; k < 6; ++k) CHECK(bis[k] == doctest::Approx(dense[k]).epsilon(1e-10));
  }
}

TEST_CASE("Sturm count is monotone and brackets the spectrum") {
  std::mt19937_64 rng(6);
  const auto t = random_matrix(rng, 60);
  const auto [lo, hi] = gershgorin_bounds(t);
  CHECK(sturm_count(t, lo - 1e-9) == 0);
  CHECK(sturm_count(t, hi + 1e-9) == t.size());
  std::size_t previous = 0;
  for (int i = 0; i <= 400; ++i) {
    const double lambda = lo + (hi - lo) * i / 400.0;
    const auto c = sturm_count(t, lambda);
    CHECK(c >= previous);
    previous = c;
  }
  const auto dense = dense_eigenvalues(t);
  for (int k = 0; k < 60; k += 7) {
    CHECK(sturm_count(t, dense[k] - 1e-8) <= static_cast<std::size_t>(k));
    CHECK(sturm_count(t, dense[k] + 1e-8) >= static_cast<std::size_t>(k + 1));
  }
}

TEST_CASE("Sturm count survives an exactly zero pivot") {
  SymTridiagonal t{{0.0, 0.0, 0.0}, {1.0, 1.0}};
  // eigenvalues -sqrt2, 0, sqrt2
  const auto at_zero = sturm_count(t, 0.0);
  CHECK((at_zero == 1 || at_zero == 2));
  CHECK(sturm_count(t, -1e-12) == 1);
  CHECK(sturm_count(t, 1e-12) == 2);
}

TEST_CASE("inverse iteration returns an eigenvector") {
  std::mt19937_64 rng(8);
  const auto t = random_matrix(rng, 80);
  for (double lambda : lowest_eigenvalues(t, 4)) {
    const auto v = eigenvector(t, lambda);
    const auto tv = multiply(t, v);
    double res = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) res = std::max(res, std::abs(tv[i] - lambda * v[i]));
    CHECK(res < 1e-8);
  }
}
