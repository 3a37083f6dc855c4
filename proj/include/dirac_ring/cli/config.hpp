#pragma once

// Run configuration for the dirac-ring command line tool: strict JSON with
// `--set key.path=value` overrides.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dirac_ring/errors.hpp"
#include "dirac_ring/model.hpp"
#include "dirac_ring/oracle.hpp"
#include "dirac_ring/spectrum.hpp"
#include "json.hpp"

namespace dirac_ring::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Mode { spectrum, crosscheck, wavefunction, current, sweep_flux };
enum class Format { csv, json };

std::string_view to_string(Mode m) noexcept;
std::optional<Mode> parse_mode(std::string_view s) noexcept;

/// Raised for malformed or invalid configuration. Syntax errors carry a
/// 1-based line and column; semantic errors carry the dotted field path.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::string field, int line = 0, int column = 0)
      : Error(what), field_(std::move(field)), line_(line), column_(column) {}
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  std::string field_;
  int line_;
  int column_;
};

/// Flux sweep in units of phi0: `steps` equally spaced values from..to inclusive.
struct SweepSpec {
  double from;
  double to;
  int steps;

  double at(int k) const noexcept { return steps == 1 ? from : from + (to - from) * k / (steps - 1); }
};

struct RunConfig {
  PhysicalParams params{1.0, 0.0, 1.0, 1.0, 0.0};
  Mode mode = Mode::spectrum;
  ChannelRange ranges{2, -2, 2, {1, -1}};
  std::vector<Regime> regimes{Regime::ring};
  std::optional<SweepSpec> sweep;
  std::optional<oracle::GridSpec> grid;  ///< unset: oracle::default_grid(params)
  oracle::OracleScheme scheme = oracle::OracleScheme::regularized;
  double crosscheck_tolerance = 1e-6;
  std::optional<double> richardson_tolerance;
  double fd_step = 1e-5;  ///< units of phi0
  std::optional<int> lowest;
  std::vector<ChannelNumbers> channels;  ///< explicit occupation for current mode
  int stride = 1;
  Format format = Format::csv;
  std::optional<std::string> out;
  /// Effective configuration after overrides, serialized for hashing.
  std::string canonical;

  oracle::GridSpec effective_grid() const { return grid ? *grid : oracle::default_grid(params); }
};

/// Parses and validates. `mode` (from the command line) must agree with a
/// "mode" key when both are present; `overrides` are "dotted.key=value"
/// strings applied before validation.
RunConfig parse_config(std::string_view text, std::optional<Mode> mode = std::nullopt,
                       const std::vector<std::string>& overrides = {});

/// 64-bit FNV-1a of the canonical configuration, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

}  // namespace dirac_ring::cli
