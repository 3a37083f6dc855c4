#include "dirac_ring/special.hpp"

#include <cmath>
#include <string>

#include "dirac_ring/errors.hpp"

namespace dirac_ring::special {

namespace {

constexpr double kIntegerTol = 1e-12;

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

bool is_nonpositive_integer(double b) noexcept {
  return b <= 0.0 && std::abs(b - std::round(b)) <= kIntegerTol;
}

}  // namespace

std::optional<int> kummer_is_polynomial(double a) noexcept {
  if (!(a <= kIntegerTol)) return std::nullopt;
  const double r = std::round(a);
  if (std::abs(a - r) > kIntegerTol) return std::nullopt;
  return static_cast<int>(-r);
}

KummerResult kummer_m_detailed(const KummerArgs& args, const KummerOptions& opts) {
  if (is_nonpositive_integer(args.b)) {
    throw InvalidB("kummer_m: b = " + std::to_string(args.b) + " is a nonpositive integer");
  }
  const auto degree = kummer_is_polynomial(args.a);
  CompensatedSum sum;
  double term = 1.0;
  sum.add(term);
  std::size_t terms = 1;

  if (degree) {
    const double a = -static_cast<double>(*degree);
    for (int j = 0; j < *degree; ++j) {
      term *= (a + j) / (args.b + j) * args.x / (j + 1);
      sum.add(term);
      ++terms;
    }
    return {sum.value(), terms};
  }

  // Alternating terms cancel badly for large -x; the transformed series has a
  // positive argument.
  if (args.x < 0.0) {
    auto r = kummer_m_detailed({args.b - args.a, args.b, -args.x}, opts);
    r.value *= std::exp(args.x);
    return r;
  }

  int small_run = 0;
  for (std::size_t j = 0;; ++j) {
    if (terms >= opts.max_terms) {
      throw NonconvergentSeries("kummer_m: no convergence after " + std::to_string(terms) + " terms");
    }
    const double jd = static_cast<double>(j);
    term *= (args.a + jd) / (args.b + jd) * args.x / (jd + 1.0);
    sum.add(term);
    ++terms;
    if (std::abs(term) < opts.rel_tol * std::abs(sum.value())) {
      if (++small_run == 3) break;
    } else {
      small_run = 0;
    }
  }
  return {sum.value(), terms};
}

double kummer_m_derivative(const KummerArgs& args, const KummerOptions& opts) {
  if (args.a == 0.0) return 0.0;
  return args.a / args.b * kummer_m({args.a + 1.0, args.b + 1.0, args.x}, opts);
}

}  // namespace dirac_ring::special
