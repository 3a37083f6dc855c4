#pragma once

#include <stdexcept>
#include <string>

namespace dirac_ring {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical parameter violates its invariant (m <= 0, q == 0, k != 0, ...).
class InvalidParams : public Error {
 public:
  InvalidParams(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// a2 == 0: without the quadratic confinement there is no discrete spectrum.
class NoBoundStates : public Error {
 public:
  NoBoundStates() : Error("no bound states (antidot regime)") {}
};

class InvalidB : public Error {
 public:
  using Error::Error;
};

class NonconvergentSeries : public Error {
 public:
  using Error::Error;
};

/// Refining the oracle grid moved the eigenvalue by more than the caller allows.
class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

/// Eigenvector amplitude at rho_max is not negligible: the box truncates the state.
class DomainTooSmall : public Error {
 public:
  using Error::Error;
};

class NegativeEnergySquared : public Error {
 public:
  using Error::Error;
};

/// The level current is requested exactly at tau_s == 0, where |tau_s| has a kink.
/// Both one-sided derivatives are attached.
class TauZeroKink : public Error {
 public:
  TauZeroKink(const std::string& what, double below, double above)
      : Error(what), from_below_(below), from_above_(above) {}
  /// Current for flux approaching the kink from below (tau_s > 0 side).
  double from_below() const noexcept { return from_below_; }
  /// Current for flux approaching the kink from above (tau_s < 0 side).
  double from_above() const noexcept { return from_above_; }

 private:
  double from_below_;
  double from_above_;
};

}  // namespace dirac_ring
