#include "dirac_ring/cli/run.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "dirac_ring/currents.hpp"
#include "dirac_ring/oracle.hpp"
#include "dirac_ring/spectrum.hpp"
#include "dirac_ring/wavefunction.hpp"

namespace dirac_ring::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

// Runs fn(i) for i in [0, n) on up to thread_count() workers; results keep index order.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, Fn fn) {
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(thread_count(), static_cast<unsigned>(n)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  // First failure in index order, so errors are as deterministic as the output.
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<ChannelNumbers> channels_in(const ChannelRange& r) {
  std::vector<ChannelNumbers> out;
  for (int n = 0; n <= r.n_max; ++n)
    for (int l = r.l_min; l <= r.l_max; ++l)
      for (int s : {1, -1})
        if (std::find(r.spins.begin(), r.spins.end(), s) != r.spins.end()) out.emplace_back(n, l, s);
  return out;
}

std::vector<Cell> channel_cells(const ChannelNumbers& nums) { return {nums.n(), nums.l(), nums.s()}; }

Table spectrum_table(const RunConfig& cfg) {
  Table t{{"n", "l", "s", "phi_over_phi0", "energy", "regime"}, {}};
  for (Regime regime : cfg.regimes) {
    for (const auto& lv : enumerate_spectrum(cfg.params, cfg.ranges, regime).levels) {
      auto row = channel_cells(lv.nums);
      row.insert(row.end(), {cfg.params.phi_over_phi0(), lv.energy, std::string(to_string(regime))});
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table crosscheck_table(const RunConfig& cfg, bool* failed) {
  require_confinement(cfg.params);
  const auto grid = cfg.effective_grid();
  const oracle::OracleOptions opts{.scheme = cfg.scheme, .richardson_tol = cfg.richardson_tolerance};
  const auto channels = channels_in(cfg.ranges);
  const auto reports = parallel_map<oracle::CrosscheckReport>(channels.size(), [&](std::size_t i) {
    return oracle::crosscheck_channel(cfg.params, channels[i], grid, cfg.crosscheck_tolerance, opts);
  });
  Table t{{"n", "l", "s", "phi_over_phi0", "tau", "energy_closed", "energy_oracle", "abs_deviation",
           "rel_deviation", "tolerance", "loosened", "status"},
          {}};
  for (const auto& r : reports) {
    auto row = channel_cells(r.nums);
    row.insert(row.end(), {cfg.params.phi_over_phi0(), r.tau, r.closed_form, r.oracle, r.abs_deviation,
                           r.rel_deviation, r.tolerance, static_cast<long long>(r.loosened),
                           std::string(r.pass ? "PASS" : "FAIL")});
    if (!r.pass && failed) *failed = true;
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table wavefunction_table(const RunConfig& cfg) {
  require_confinement(cfg.params);
  const auto channels = channels_in(cfg.ranges);
  Table t{{"n", "l", "s", "rho", "radial", "eta_up_re", "eta_up_im", "eta_down_re", "eta_down_im", "chi_up_re",
           "chi_up_im", "chi_down_re", "chi_down_im"},
          {}};
  const auto spinors = parallel_map<std::pair<wavefunction::RadialFunction, wavefunction::Spinor4>>(
      channels.size(), [&](std::size_t i) {
        const auto grid = cfg.grid ? *cfg.grid : wavefunction::spinor_grid(cfg.params, channels[i]);
        const double e = ring_energy(cfg.params, channels[i]).energy;
        return std::pair{wavefunction::radial_function(cfg.params, channels[i], grid),
                         wavefunction::build_spinor(cfg.params, channels[i], e, grid)};
      });
  for (const auto& [radial, spinor] : spinors) {
    for (int i = 0; i < spinor.grid.points; i += cfg.stride) {
      auto row = channel_cells(spinor.nums);
      row.push_back(spinor.grid.node(i));
      row.push_back(radial.values[i]);
      for (const auto& comp : spinor.components) {
        row.push_back(comp[i].real());
        row.push_back(comp[i].imag());
      }
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table current_table(const RunConfig& cfg, bool allow_kinks) {
  require_confinement(cfg.params);
  currents::OccupationSet occ;
  if (!cfg.channels.empty()) {
    occ = {cfg.channels, "explicit"};
  } else if (cfg.lowest) {
    occ = currents::lowest_levels(cfg.params, cfg.ranges, static_cast<std::size_t>(*cfg.lowest));
  } else {
    occ = {channels_in(cfg.ranges), "all channels in range"};
  }
  occ.validate();
  const double h = cfg.fd_step * cfg.params.phi0();
  Table t{{"n", "l", "s", "phi_over_phi0", "current_analytic", "current_fd"}, {}};
  for (const auto& nums : occ.levels) {
    double analytic = NAN;
    try {
      analytic = currents::level_current(cfg.params, nums);
    } catch (const TauZeroKink&) {
      if (!allow_kinks) throw;
    }
    auto row = channel_cells(nums);
    row.insert(row.end(), {cfg.params.phi_over_phi0(), analytic,
                           currents::finite_difference_current(cfg.params, nums, h).value});
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table sweep_table(const RunConfig& cfg) {
  require_confinement(cfg.params);
  const auto channels = channels_in(cfg.ranges);
  const auto& sw = *cfg.sweep;
  Table t{{"n", "l", "s", "phi_over_phi0", "energy", "current"}, {}};
  for (int k = 0; k < sw.steps; ++k) {
    const double ratio = sw.at(k);
    const auto params = cfg.params.with_phi(ratio * cfg.params.phi0());
    for (const auto& nums : channels) {
      double current = NAN;  // tau = 0 exactly: no derivative
      try {
        current = currents::level_current(params, nums);
      } catch (const TauZeroKink&) {
      }
      auto row = channel_cells(nums);
      row.insert(row.end(), {ratio, ring_energy(params, nums).energy, current});
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json to_json(const Cell& c) {
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? ordered_json(*d) : ordered_json(nullptr);
  return std::get<std::string>(c);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void diagnostic(std::ostream& err, const char* kind, int code, const std::string& message,
                const ConfigError* cfg_error = nullptr) {
  ordered_json d;
  d["error"] = kind;
  d["exit_code"] = code;
  d["message"] = message;
  if (cfg_error) {
    if (!cfg_error->field().empty()) d["field"] = cfg_error->field();
    if (cfg_error->line() > 0) {
      d["line"] = cfg_error->line();
      d["column"] = cfg_error->column();
    }
  }
  err << d.dump() << '\n';
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << content;
  if (!f) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace

unsigned thread_count() {
  if (const char* env = std::getenv("DIRAC_RING_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Table compute(const RunConfig& cfg, bool allow_kinks, bool* failed) {
  switch (cfg.mode) {
    case Mode::spectrum: return spectrum_table(cfg);
    case Mode::crosscheck: return crosscheck_table(cfg, failed);
    case Mode::wavefunction: return wavefunction_table(cfg);
    case Mode::current: return current_table(cfg, allow_kinks);
    case Mode::sweep_flux: return sweep_table(cfg);
  }
  return {};
}

std::string render_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const auto* v = std::get_if<long long>(&row[i])) {
        out += std::to_string(*v);
      } else if (const auto* d = std::get_if<double>(&row[i])) {
        out += format_real(*d);
      } else {
        out += std::get<std::string>(row[i]);
      }
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Table& t, const RunConfig& cfg) {
  ordered_json doc;
  doc["meta"]["version"] = std::string(kVersion);
  doc["meta"]["config_hash"] = config_hash(cfg);
  doc["rows"] = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = to_json(row[i]);
    doc["rows"].push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Relativistic quantum-ring spectra, spinors and persistent currents", "dirac-ring"};
  std::string mode_text, config_path, out_path, format;
  std::vector<std::string> overrides;
  bool allow_kinks = false;
  app.add_option("mode", mode_text, "spectrum | crosscheck | wavefunction | current | sweep-flux")->required();
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--set", overrides, "override a scalar field, e.g. params.a2=0.5");
  app.add_option("--out", out_path, "output file (default: standard output)");
  app.add_option("--format", format, "csv | json");
  app.add_flag("--allow-kinks", allow_kinks, "write NaN instead of failing at tau = 0 in current mode");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    diagnostic(err, "UsageError", kValidation, e.what());
    return kValidation;
  }

  try {
    const auto mode = parse_mode(mode_text);
    if (!mode) throw ConfigError("unknown mode \"" + mode_text + "\"", "mode");
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + config_path, "config");
    std::stringstream buffer;
    buffer << in.rdbuf();
    if (!format.empty()) overrides.push_back("format=\"" + format + "\"");
    RunConfig cfg = parse_config(buffer.str(), mode, overrides);
    if (!out_path.empty()) cfg.out = out_path;

    bool failed = false;
    const Table table = compute(cfg, allow_kinks, &failed);
    const std::string text = cfg.format == Format::csv ? render_csv(table) : render_json(table, cfg);
    if (cfg.out) {
      write_file(*cfg.out, text);
      ordered_json meta;
      meta["version"] = std::string(kVersion);
      meta["config_hash"] = config_hash(cfg);
      meta["mode"] = std::string(to_string(cfg.mode));
      meta["rows"] = table.rows.size();
      meta["generated_at"] = utc_timestamp();
      meta["config"] = ordered_json::parse(cfg.canonical);
      write_file(*cfg.out + ".meta.json", meta.dump(2) + "\n");
    } else {
      out << text;
    }
    if (failed) {
      diagnostic(err, "CrosscheckFailed", kFailure, "one or more channels exceeded the crosscheck tolerance");
      return kFailure;
    }
    return kOk;
  } catch (const ConfigError& e) {
    diagnostic(err, "ConfigError", kValidation, e.what(), &e);
    return kValidation;
  } catch (const InvalidParams& e) {
    diagnostic(err, "InvalidParams", kValidation, e.what());
    return kValidation;
  } catch (const NoBoundStates& e) {
    diagnostic(err, "NoBoundStates", kNoBoundStates, e.what());
    return kNoBoundStates;
  } catch (const GridTooCoarse& e) {
    diagnostic(err, "GridTooCoarse", kOracleFailure, e.what());
    return kOracleFailure;
  } catch (const DomainTooSmall& e) {
    diagnostic(err, "DomainTooSmall", kOracleFailure, e.what());
    return kOracleFailure;
  } catch (const TauZeroKink& e) {
    diagnostic(err, "TauZeroKink", kTauKink, std::string(e.what()) + " (rerun with --allow-kinks)");
    return kTauKink;
  } catch (const std::exception& e) {
    diagnostic(err, "Error", kFailure, e.what());
    return kFailure;
  }
}

}  // namespace dirac_ring::cli
