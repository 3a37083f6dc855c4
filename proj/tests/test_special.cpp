#include <cmath>
#include <random>

#include "dirac_ring/errors.hpp"
#include "dirac_ring/special.hpp"
#include "doctest.h"

using namespace dirac_ring;
using namespace dirac_ring::special;

TEST_CASE("kummer_m: worked values") {
  CHECK(kummer_m({0.37, 2.0, 0.0}) == 1.0);
  CHECK(kummer_m({-1.0, 3.0, 2.0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // 1 - x + x^2/6 at x = 1
  CHECK(kummer_m({-2.0, 2.0, 1.0}) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("kummer_m: closed forms of the infinite series") {
  for (double x : {0.1, 1.0, 3.5, 8.0}) {
    CHECK(kummer_m({2.5, 2.5, x}) == doctest::Approx(std::exp(x)).epsilon(1e-13));
    CHECK(kummer_m({1.0, 2.0, x}) == doctest::Approx(std::expm1(x) / x).epsilon(1e-13));
    // Kummer's transformation M(a,b,x) = e^x M(b-a,b,-x)
    CHECK(kummer_m({0.3, 1.7, x}) == doctest::Approx(std::exp(x) * kummer_m({1.4, 1.7, -x})).epsilon(1e-12));
  }
}

TEST_CASE("kummer_m: polynomial terminates after n+1 terms") {
  for (int n = 0; n <= 12; ++n) {
    for (double x : {0.0, 0.5, 7.0, 40.0}) {
      const auto r = kummer_m_detailed({-static_cast<double>(n), 1.3, x});
      CHECK(r.terms == static_cast<std::size_t>(n + 1));
    }
    CHECK(kummer_m({-static_cast<double>(n), 2.7, 0.0}) == 1.0);
  }
}

TEST_CASE("kummer_m: associated Laguerre identity") {
  // M(-n, alpha+1, x) = n! / (alpha+1)_n  L_n^alpha(x); L_2^alpha explicit.
  const double alpha = 0.6;
  for (double x : {0.2, 1.5, 6.0}) {
    const double l2 = 0.5 * (x * x - 2 * (alpha + 2) * x + (alpha + 1) * (alpha + 2));
    const double expected = 2.0 / ((alpha + 1) * (alpha + 2)) * l2;
    CHECK(kummer_m({-2.0, alpha + 1, x}) == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("kummer_is_polynomial") {
  CHECK(kummer_is_polynomial(-3.0) == 3);
  CHECK(kummer_is_polynomial(0.0) == 0);
  CHECK_FALSE(kummer_is_polynomial(-2.5).has_value());
  CHECK_FALSE(kummer_is_polynomial(1.0).has_value());
  CHECK(kummer_is_polynomial(-4.0 + 1e-13) == 4);
}

TEST_CASE("kummer_m: errors") {
  CHECK_THROWS_AS(kummer_m({1.0, 0.0, 1.0}), InvalidB);
  CHECK_THROWS_AS(kummer_m({1.0, -3.0, 1.0}), InvalidB);
  CHECK_THROWS_AS(kummer_m({0.5, 1.0, 50.0}, KummerOptions{1e-14, 20}), NonconvergentSeries);
  CHECK_NOTHROW(kummer_m({1.0, -2.5, 1.0}));
}

TEST_CASE("kummer_m satisfies the confluent hypergeometric equation") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ua(-5.0, 5.0), ub(0.3, 6.0), ux(0.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double a = i % 3 == 0 ? -std::floor(-ua(rng) / 2 + 2.5) : ua(rng);
    const double b = ub(rng), x = ux(rng);
    const double m0 = kummer_m({a, b, x});
    const double m1 = a / b * kummer_m({a + 1, b + 1, x});
    const double m2 = a * (a + 1) / (b * (b + 1)) * kummer_m({a + 2, b + 2, x});
    const double residual = x * m2 + (b - x) * m1 - a * m0;
    const double scale = std::abs(x * m2) + std::abs((b - x) * m1) + std::abs(a * m0) + 1e-300;
    CHECK(std::abs(residual) / scale <= 1e-9);
  }
}
