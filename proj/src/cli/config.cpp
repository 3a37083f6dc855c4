#include "dirac_ring/cli/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <set>

namespace dirac_ring::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

// DOM builder that refuses duplicate keys and reports syntax errors as positions.
class StrictSax : public nlohmann::detail::json_sax_dom_parser<ordered_json> {
  using Base = nlohmann::detail::json_sax_dom_parser<ordered_json>;

 public:
  explicit StrictSax(ordered_json& root) : Base(root, false) {}

  bool start_object(std::size_t n) {
    keys_.emplace_back();
    return Base::start_object(n);
  }
  bool end_object() {
    keys_.pop_back();
    return Base::end_object();
  }
  bool key(string_t& k) {
    if (!keys_.back().insert(k).second) {
      duplicate = k;
      return false;
    }
    return Base::key(k);
  }
  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
    error_position = position;
    error_message = ex.what();
    return false;
  }

  std::optional<std::string> duplicate;
  std::optional<std::size_t> error_position;
  std::string error_message;

 private:
  std::vector<std::set<std::string>> keys_;
};

std::pair<int, int> line_column(std::string_view text, std::size_t position) {
  int line = 1, column = 1;
  const std::size_t end = std::min(position > 0 ? position - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

ordered_json parse_strict(std::string_view text) {
  ordered_json root;
  StrictSax sax(root);
  const bool ok = ordered_json::sax_parse(text, &sax);
  if (sax.duplicate) throw ConfigError("duplicate key \"" + *sax.duplicate + "\"", *sax.duplicate);
  if (!ok || sax.error_position) {
    const auto [line, column] = line_column(text, sax.error_position.value_or(0));
    throw ConfigError("parse error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                          sax.error_message,
                      "", line, column);
  }
  if (!root.is_object()) throw ConfigError("configuration must be a JSON object", "");
  return root;
}

void apply_override(ordered_json& root, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("--set expects key=value, got \"" + assignment + "\"", assignment);
  }
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  ordered_json value = ordered_json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  if (value.is_object() || value.is_array()) {
    throw ConfigError("--set only overrides scalar fields", path);
  }
  ordered_json* node = &root;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string part = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError("malformed --set key", path);
    if (!node->is_object()) throw ConfigError("--set path crosses a non-object", path);
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    if (node->is_null()) *node = ordered_json::object();
    start = dot + 1;
  }
}

// Reads fields of one object and rejects whatever it did not read.
class ObjectReader {
 public:
  ObjectReader(const ordered_json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ConfigError(where("") + " must be an object", path_);
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const ordered_json* get(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
    const auto* v = get(key);
    if (!v) {
      if (fallback) return *fallback;
      throw ConfigError(where(key) + " is required", where(key));
    }
    if (!v->is_number()) throw ConfigError(where(key) + " must be a number", where(key));
    return v->get<double>();
  }

  int integer(const std::string& key, std::optional<int> fallback = std::nullopt) {
    const auto* v = get(key);
    if (!v) {
      if (fallback) return *fallback;
      throw ConfigError(where(key) + " is required", where(key));
    }
    if (!v->is_number_integer()) throw ConfigError(where(key) + " must be an integer", where(key));
    return v->get<int>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const auto* v = get(key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(where(key) + " must be a string", where(key));
    return v->get<std::string>();
  }

  std::string where(const std::string& key) const {
    if (path_.empty()) return key;
    return key.empty() ? path_ : path_ + "." + key;
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) throw ConfigError("unknown key " + where(item.key()), where(item.key()));
    }
  }

 private:
  const ordered_json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

Regime parse_regime(const std::string& s, const std::string& field) {
  for (Regime r : {Regime::ring, Regime::dot, Regime::nonrel_ring, Regime::nonrel_dot}) {
    if (to_string(r) == s) return r;
  }
  throw ConfigError("unknown regime \"" + s + "\"", field);
}

int spin_from(const ordered_json& v, const std::string& field) {
  if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1)) {
    throw ConfigError(field + " must contain only 1 or -1", field);
  }
  return v.get<int>();
}

PhysicalParams read_params(ObjectReader& top) {
  const auto* node = top.get("params");
  if (!node) throw ConfigError("params is required", "params");
  ObjectReader r(*node, "params");
  const double m = r.number("m");
  const double a1 = r.number("a1", 0.0);
  const double a2 = r.number("a2");
  const double q = r.number("q", 1.0);
  const double k = r.number("k", 0.0);
  if (r.has("phi") && r.has("phi_over_phi0")) {
    throw ConfigError("give either params.phi or params.phi_over_phi0, not both", "params.phi");
  }
  const double phi = r.number("phi", 0.0);
  const std::optional<double> ratio =
      r.has("phi_over_phi0") ? std::optional(r.number("phi_over_phi0")) : std::nullopt;
  r.finish();
  try {
    PhysicalParams p(m, a1, a2, q, phi, k);
    return ratio ? p.with_phi(*ratio * p.phi0()) : p;
  } catch (const InvalidParams& e) {
    throw ConfigError(std::string("params.") + e.what(), "params." + e.field());
  }
}

// Every effective setting in a fixed order; the output path is left out since
// it does not change the data.
std::string canonical_form(const RunConfig& cfg) {
  ordered_json j;
  const auto& p = cfg.params;
  j["mode"] = std::string(to_string(cfg.mode));
  j["params"] = {{"m", p.m()}, {"a1", p.a1()}, {"a2", p.a2()}, {"q", p.q()}, {"k", p.k()}, {"phi", p.phi()}};
  j["ranges"] = {{"n_max", cfg.ranges.n_max}, {"l_min", cfg.ranges.l_min}, {"l_max", cfg.ranges.l_max},
                 {"s", cfg.ranges.spins}};
  j["regimes"] = ordered_json::array();
  for (Regime r : cfg.regimes) j["regimes"].push_back(std::string(to_string(r)));
  if (cfg.sweep) j["sweep"] = {{"from", cfg.sweep->from}, {"to", cfg.sweep->to}, {"steps", cfg.sweep->steps}};
  const auto g = cfg.effective_grid();
  j["grid"] = {{"rho_min", g.rho_min}, {"rho_max", g.rho_max}, {"points", g.points}};
  j["crosscheck"] = {{"tolerance", cfg.crosscheck_tolerance},
                     {"richardson_tolerance", cfg.richardson_tolerance ? ordered_json(*cfg.richardson_tolerance)
                                                                       : ordered_json(nullptr)},
                     {"scheme", std::string(oracle::to_string(cfg.scheme))}};
  ordered_json channels = ordered_json::array();
  for (const auto& c : cfg.channels) channels.push_back({c.n(), c.l(), c.s()});
  j["current"] = {{"fd_step", cfg.fd_step},
                  {"lowest", cfg.lowest ? ordered_json(*cfg.lowest) : ordered_json(nullptr)},
                  {"channels", channels}};
  j["wavefunction"] = {{"stride", cfg.stride}};
  j["format"] = cfg.format == Format::csv ? "csv" : "json";
  return j.dump();
}

}  // namespace

std::string_view to_string(Mode m) noexcept {
  switch (m) {
    case Mode::spectrum: return "spectrum";
    case Mode::crosscheck: return "crosscheck";
    case Mode::wavefunction: return "wavefunction";
    case Mode::current: return "current";
    case Mode::sweep_flux: return "sweep-flux";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view s) noexcept {
  for (Mode m : {Mode::spectrum, Mode::crosscheck, Mode::wavefunction, Mode::current, Mode::sweep_flux}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

RunConfig parse_config(std::string_view text, std::optional<Mode> mode, const std::vector<std::string>& overrides) {
  ordered_json root = parse_strict(text);
  for (const auto& o : overrides) apply_override(root, o);

  RunConfig cfg;
  ObjectReader top(root, "");

  const std::string mode_text = top.string("mode", "");
  if (!mode_text.empty()) {
    const auto m = parse_mode(mode_text);
    if (!m) throw ConfigError("unknown mode \"" + mode_text + "\"", "mode");
    if (mode && *mode != *m) throw ConfigError("mode in configuration disagrees with the command line", "mode");
    mode = m;
  }
  if (!mode) throw ConfigError("no mode given", "mode");
  cfg.mode = *mode;

  cfg.params = read_params(top);

  if (const auto* node = top.get("ranges")) {
    ObjectReader r(*node, "ranges");
    cfg.ranges.n_max = r.integer("n_max", cfg.ranges.n_max);
    cfg.ranges.l_min = r.integer("l_min", cfg.ranges.l_min);
    cfg.ranges.l_max = r.integer("l_max", cfg.ranges.l_max);
    if (const auto* s = r.get("s")) {
      if (!s->is_array()) throw ConfigError("ranges.s must be an array", "ranges.s");
      cfg.ranges.spins.clear();
      for (const auto& v : *s) cfg.ranges.spins.push_back(spin_from(v, "ranges.s"));
    }
    r.finish();
  }
  if (cfg.ranges.n_max < 0) throw ConfigError("ranges.n_max must be >= 0", "ranges.n_max");
  if (cfg.ranges.l_min > cfg.ranges.l_max) throw ConfigError("ranges.l_min exceeds ranges.l_max", "ranges.l_min");

  if (const auto* node = top.get("regimes")) {
    if (!node->is_array() || node->empty()) throw ConfigError("regimes must be a nonempty array", "regimes");
    cfg.regimes.clear();
    for (const auto& v : *node) {
      if (!v.is_string()) throw ConfigError("regimes entries must be strings", "regimes");
      cfg.regimes.push_back(parse_regime(v.get<std::string>(), "regimes"));
    }
  }

  if (const auto* node = top.get("sweep")) {
    ObjectReader r(*node, "sweep");
    SweepSpec sw{r.number("from"), r.number("to"), r.integer("steps")};
    r.finish();
    if (sw.steps < 1) throw ConfigError("sweep.steps must be >= 1", "sweep.steps");
    if (!std::isfinite(sw.from) || !std::isfinite(sw.to)) throw ConfigError("sweep bounds must be finite", "sweep");
    cfg.sweep = sw;
  }
  if ((cfg.mode == Mode::sweep_flux) != cfg.sweep.has_value()) {
    throw ConfigError(cfg.sweep ? "sweep is only valid in sweep-flux mode" : "sweep-flux mode requires a sweep",
                      "sweep");
  }

  if (const auto* node = top.get("grid")) {
    ObjectReader r(*node, "grid");
    // Unspecified fields fall back to the default grid, which needs a2 > 0.
    const bool complete = r.has("rho_min") && r.has("rho_max") && r.has("points");
    const auto base = complete ? oracle::GridSpec{0, 0, 0} : oracle::default_grid(cfg.params);
    oracle::GridSpec g{r.number("rho_min", base.rho_min), r.number("rho_max", base.rho_max),
                       r.integer("points", base.points)};
    r.finish();
    try {
      g.validate();
    } catch (const InvalidParams& e) {
      throw ConfigError(std::string("grid.") + e.what(), "grid." + e.field());
    }
    cfg.grid = g;
  }

  if (const auto* node = top.get("crosscheck")) {
    ObjectReader r(*node, "crosscheck");
    cfg.crosscheck_tolerance = r.number("tolerance", cfg.crosscheck_tolerance);
    if (r.has("richardson_tolerance")) cfg.richardson_tolerance = r.number("richardson_tolerance");
    const std::string scheme = r.string("scheme", "regularized");
    if (scheme == "regularized") {
      cfg.scheme = oracle::OracleScheme::regularized;
    } else if (scheme == "liouville") {
      cfg.scheme = oracle::OracleScheme::liouville;
    } else {
      throw ConfigError("unknown scheme \"" + scheme + "\"", "crosscheck.scheme");
    }
    r.finish();
    if (!(cfg.crosscheck_tolerance > 0)) throw ConfigError("crosscheck.tolerance must be positive", "crosscheck.tolerance");
  }

  if (const auto* node = top.get("current")) {
    ObjectReader r(*node, "current");
    cfg.fd_step = r.number("fd_step", cfg.fd_step);
    if (r.has("lowest") && r.has("channels")) {
      throw ConfigError("give either current.lowest or current.channels", "current.lowest");
    }
    if (r.has("lowest")) {
      cfg.lowest = r.integer("lowest");
      if (*cfg.lowest < 0) throw ConfigError("current.lowest must be >= 0", "current.lowest");
    }
    if (const auto* ch = r.get("channels")) {
      if (!ch->is_array()) throw ConfigError("current.channels must be an array", "current.channels");
      for (const auto& v : *ch) {
        if (!v.is_array() || v.size() != 3 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
          throw ConfigError("current.channels entries must be [n, l, s]", "current.channels");
        }
        try {
          cfg.channels.emplace_back(v[0].get<int>(), v[1].get<int>(), spin_from(v[2], "current.channels"));
        } catch (const InvalidParams& e) {
          throw ConfigError(std::string("current.channels: ") + e.what(), "current.channels");
        }
      }
    }
    r.finish();
    if (!(cfg.fd_step > 0)) throw ConfigError("current.fd_step must be positive", "current.fd_step");
  }

  if (const auto* node = top.get("wavefunction")) {
    ObjectReader r(*node, "wavefunction");
    cfg.stride = r.integer("stride", 1);
    r.finish();
    if (cfg.stride < 1) throw ConfigError("wavefunction.stride must be >= 1", "wavefunction.stride");
  }

  const std::string format = top.string("format", "csv");
  if (format == "csv") {
    cfg.format = Format::csv;
  } else if (format == "json") {
    cfg.format = Format::json;
  } else {
    throw ConfigError("format must be csv or json", "format");
  }
  if (const auto* node = top.get("out")) {
    if (!node->is_string()) throw ConfigError("out must be a string", "out");
    cfg.out = node->get<std::string>();
  }
  top.finish();

  cfg.canonical = canonical_form(cfg);
  return cfg;
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : cfg.canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace dirac_ring::cli
