// Acceptance criteria A1-A8. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails. Tolerances are fixed here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dirac_ring/cli/run.hpp"
#include "dirac_ring/currents.hpp"
#include "dirac_ring/oracle.hpp"
#include "dirac_ring/special.hpp"
#include "dirac_ring/spectrum.hpp"
#include "dirac_ring/wavefunction.hpp"

using namespace dirac_ring;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

PhysicalParams with_flux_ratio(PhysicalParams p, double ratio) { return p.with_phi(ratio * p.phi0()); }

Outcome a1_closed_form_vs_oracle() {
  const auto start = std::chrono::steady_clock::now();
  int passed = 0, total = 0, loosened = 0;
  double worst = 0.0;
  for (double a1 : {0.0, 0.5})
    for (double a2 : {0.5, 2.0})
      for (double ratio : {0.0, 0.3})
        for (const ChannelNumbers& nums : {ChannelNumbers(0, 0, 1), ChannelNumbers(1, -1, 1), ChannelNumbers(0, 2, -1)}) {
          const auto p = with_flux_ratio(PhysicalParams(1.0, a1, a2, 1.0, 0.0), ratio);
          const auto r = oracle::crosscheck_channel(p, nums, oracle::default_grid(p), 1e-6);
          ++total;
          passed += r.pass;
          loosened += r.loosened;
          worst = std::max(worst, r.rel_deviation / r.tolerance);
        }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = passed == 24 && total == 24 && seconds < 60.0;
  return {pass, std::to_string(passed) + "/" + std::to_string(total) + " channels within 1e-6 (" +
                    std::to_string(loosened) + " loosened x10), worst deviation/tolerance " + fmt("%.3g", worst) +
                    ", " + fmt("%.2f", seconds) + " s"};
}

ChannelNumbers random_channel(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n(0, 4), l(-6, 6), s(0, 1);
  return ChannelNumbers(n(rng), l(rng), s(rng) ? 1 : -1);
}

PhysicalParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> m(0.2, 5.0), a(0.0, 2.0), a2(0.05, 3.0), phi(-3.0, 3.0);
  std::uniform_int_distribution<int> q(0, 3);
  const double charges[] = {1.0, -1.0, 2.0, -0.5};
  const PhysicalParams base(m(rng), a(rng), a2(rng), charges[q(rng)], 0.0);
  return with_flux_ratio(base, phi(rng));
}

Outcome a2_flux_periodicity() {
  std::mt19937_64 rng(20260201);
  double worst_energy = 0.0, worst_current = 0.0;
  int currents_checked = 0;
  for (int draw = 0; draw < 1000; ++draw) {
    const auto p = random_params(rng);
    const auto nums = random_channel(rng);
    const auto shifted = p.with_phi(p.phi() - p.phi0());
    const ChannelNumbers next(nums.n(), nums.l() + 1, nums.s());
    const double e0 = ring_energy(shifted, nums).energy;
    const double e1 = ring_energy(p, next).energy;
    worst_energy = std::max(worst_energy, std::abs(e0 - e1) / (kEps * std::abs(e1)));
    if (std::abs(derive_channel(p, next).tau) < 1e-9) continue;
    const double i0 = currents::level_current(shifted, nums);
    const double i1 = currents::level_current(p, next);
    ++currents_checked;
    if (i1 != 0.0 || i0 != 0.0) worst_current = std::max(worst_current, std::abs(i0 - i1) / (kEps * std::abs(i1)));
  }
  const bool pass = worst_energy <= 4.0 && worst_current <= 4.0;
  return {pass, "1000 draws, worst energy deviation " + fmt("%.2f", worst_energy) + " ulp, worst current deviation " +
                    fmt("%.2f", worst_current) + " ulp over " + std::to_string(currents_checked) + " non-kink draws"};
}

Outcome a3_current_derivative() {
  std::mt19937_64 rng(20260202);
  std::uniform_real_distribution<double> m(0.5, 2.0), a1(0.0, 1.0), a2(0.1, 2.0), phi(-1.0, 1.0);
  double worst = 0.0;
  int checked = 0, flat = 0;
  while (checked < 200) {
    const auto p = with_flux_ratio(PhysicalParams(m(rng), a1(rng), a2(rng), 1.0, 0.0), phi(rng));
    const auto nums = random_channel(rng);
    if (std::abs(derive_channel(p, nums).tau) < 1e-3) continue;
    const double analytic = currents::level_current(p, nums);
    const auto fd = currents::finite_difference_current(p, nums, 1e-5 * p.phi0());
    if (fd.kink_straddle) continue;
    ++checked;
    // sgn(tau) = -s: the level is flat in phi and the current vanishes exactly;
    // compare against the magnitude it would have on the other branch.
    const double scale = analytic != 0.0 ? std::abs(analytic)
                                         : std::abs(p.q()) / std::numbers::pi * confinement_scale(p) /
                                               ring_energy(p, nums).energy;
    flat += analytic == 0.0;
    worst = std::max(worst, std::abs(fd.value - analytic) / scale);
  }

  // Convergence order from the two coarse steps, on moving levels away from the kink.
  double order_lo = std::numeric_limits<double>::infinity(), order_hi = -order_lo;
  int order_checked = 0;
  while (order_checked < 20) {
    const auto p = with_flux_ratio(PhysicalParams(m(rng), a1(rng), a2(rng), 1.0, 0.0), phi(rng));
    const auto nums = random_channel(rng);
    const double tau = derive_channel(p, nums).tau;
    if (std::abs(tau) < 0.1 || (tau > 0) != (nums.s() > 0)) continue;
    const double analytic = currents::level_current(p, nums);
    const double e1 = std::abs(currents::finite_difference_current(p, nums, 0.02 * p.phi0()).value - analytic);
    const double e2 = std::abs(currents::finite_difference_current(p, nums, 0.01 * p.phi0()).value - analytic);
    const double order = std::log2(e1 / e2);
    order_lo = std::min(order_lo, order);
    order_hi = std::max(order_hi, order);
    ++order_checked;
  }
  const bool pass = worst <= 1e-8 && order_lo >= 1.7 && order_hi <= 2.3;
  return {pass, "200 channels (" + std::to_string(flat) + " flat), worst relative deviation " + fmt("%.3g", worst) +
                    ", observed order in [" + fmt("%.3f", order_lo) + ", " + fmt("%.3f", order_hi) + "]"};
}

Outcome a4_spinor_residual() {
  const auto p = with_flux_ratio(PhysicalParams(1.0, 0.5, 2.0, 1.0, 0.0), 0.3);
  double worst = 0.0, weakest_control = std::numeric_limits<double>::infinity();
  int channels = 0;
  for (int s : {1, -1})
    for (int n = 0; n <= 2; ++n)
      for (int l : {-1, 1}) {
        const ChannelNumbers nums(n, l, s);
        const auto grid = wavefunction::spinor_grid(p, nums);
        const double e = ring_energy(p, nums).energy;
        const auto res = wavefunction::dirac_residual(wavefunction::build_spinor(p, nums, e, grid), p);
        const auto off = wavefunction::dirac_residual(wavefunction::build_spinor(p, nums, 1.01 * e, grid), p);
        worst = std::max({worst, res.r1, res.r2});
        weakest_control = std::min(weakest_control, off.r1);
        ++channels;
      }
  const bool pass = channels == 12 && worst <= 1e-10 && weakest_control > 1e-3;
  return {pass, std::to_string(channels) + " channels, worst residual " + fmt("%.3g", worst) +
                    ", smallest r1 at 1% energy offset " + fmt("%.3g", weakest_control)};
}

Outcome a5_limits() {
  // (i) dot limit, bit for bit
  int mismatches = 0, compared = 0;
  for (double a2 : {0.1, 0.5, 2.0, 7.3})
    for (double ratio : {0.0, 0.3, -1.7})
      for (int n = 0; n <= 3; ++n)
        for (int l = -3; l <= 3; ++l)
          for (int s : {1, -1}) {
            const auto p = with_flux_ratio(PhysicalParams(1.3, 0.0, a2, 1.0, 0.0), ratio);
            const ChannelNumbers nums(n, l, s);
            ++compared;
            mismatches += ring_energy(p, nums).energy != dot_energy(p.with_a1(0.7), nums).energy;
          }

  // (ii) nonrelativistic limit
  bool monotone = true;
  for (const ChannelNumbers& nums : {ChannelNumbers(0, 0, 1), ChannelNumbers(1, -1, -1), ChannelNumbers(2, 1, 1)}) {
    double previous = std::numeric_limits<double>::infinity();
    for (double m : {10.0, 100.0, 1000.0}) {
      const auto p = with_flux_ratio(PhysicalParams(m, 0.01, 0.01, 1.0, 0.0), 0.2);
      const double gap = std::abs(ring_energy(p, nums).energy - nonrel_ring_energy(p, nums).energy);
      monotone = monotone && gap < previous;
      previous = gap;
    }
  }

  // (iii) antidot in every mode
  int rejected = 0;
  const std::vector<std::string> modes{"spectrum", "crosscheck", "wavefunction", "current", "sweep-flux"};
  const auto cfg_path = std::filesystem::temp_directory_path() / "dirac_ring_acceptance_antidot.json";
  for (const auto& mode : modes) {
    std::string cfg = R"({"params": {"m": 1, "a1": 0.3, "a2": 0})";
    if (mode == "sweep-flux") cfg += R"(, "sweep": {"from": 0, "to": 1, "steps": 5})";
    std::ofstream(cfg_path) << cfg << "}";
    std::ostringstream out, err;
    const int code = cli::main_entry({mode, "--config", cfg_path.string()}, out, err);
    rejected += code == cli::kNoBoundStates && err.str().find("no bound states") != std::string::npos;
  }
  const PhysicalParams antidot(1.0, 0.3, 0.0, 1.0, 0.0);
  const ChannelNumbers ground(0, 0, 1);
  const std::vector<std::function<void()>> calls{
      [&] { ring_energy(antidot, ground); },
      [&] { dot_energy(antidot, ground); },
      [&] { nonrel_ring_energy(antidot, ground); },
      [&] { nonrel_dot_energy(antidot, ground); },
      [&] { currents::level_current(antidot, ground); },
      [&] { wavefunction::radial_function(antidot, ground, {0.1, 1.0, 11}); },
      [&] { oracle::crosscheck_channel(antidot, ground, {0.1, 1.0, 11}, 1e-6); },
  };
  int library_rejected = 0;
  for (const auto& call : calls) {
    try {
      call();
    } catch (const NoBoundStates&) {
      ++library_rejected;
    }
  }

  const bool pass = mismatches == 0 && monotone && rejected == 5 &&
                    library_rejected == static_cast<int>(calls.size());
  return {pass, "dot limit " + std::to_string(compared - mismatches) + "/" + std::to_string(compared) +
                    " bit-identical, nonrel gap monotone: " + (monotone ? "yes" : "no") + ", antidot rejected in " +
                    std::to_string(rejected) + "/5 modes and " + std::to_string(library_rejected) + "/" +
                    std::to_string(calls.size()) + " library calls"};
}

Outcome a6_wavefunction_structure() {
  const auto p = with_flux_ratio(PhysicalParams(1.0, 0.3, 0.8, 1.0, 0.0), 0.35);
  const auto grid = oracle::default_grid(p);
  bool nodes_ok = true;
  double worst_norm = 0.0, worst_overlap = 0.0;
  for (const auto& [l, s] : {std::pair{0, 1}, std::pair{2, -1}, std::pair{-1, 1}}) {
    std::vector<wavefunction::RadialFunction> radial;
    for (int n = 0; n <= 3; ++n) {
      radial.push_back(wavefunction::radial_function(p, ChannelNumbers(n, l, s), grid));
      nodes_ok = nodes_ok && wavefunction::node_count(radial.back().values) == n;
      worst_norm = std::max(worst_norm, std::abs(wavefunction::norm_integral(radial.back()) - 1.0));
    }
    for (std::size_t i = 0; i < radial.size(); ++i)
      for (std::size_t j = i + 1; j < radial.size(); ++j)
        worst_overlap = std::max(worst_overlap, std::abs(wavefunction::overlap(radial[i], radial[j])));
  }
  const bool pass = nodes_ok && worst_norm <= 1e-8 && worst_overlap <= 1e-8;
  return {pass, std::string("node counts ") + (nodes_ok ? "match" : "MISMATCH") + " for n = 0..3, worst |norm - 1| " +
                    fmt("%.3g", worst_norm) + ", worst overlap " + fmt("%.3g", worst_overlap)};
}

Outcome a7_kummer() {
  std::mt19937_64 rng(20260207);
  std::uniform_real_distribution<double> a(-6.0, 6.0), b(0.3, 8.0), x(-10.0, 25.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double av = a(rng), bv = b(rng), xv = x(rng);
    const double m0 = special::kummer_m({av, bv, xv});
    const double m1 = av / bv * special::kummer_m({av + 1.0, bv + 1.0, xv});
    const double m2 = av * (av + 1.0) / (bv * (bv + 1.0)) * special::kummer_m({av + 2.0, bv + 2.0, xv});
    const double residual = xv * m2 + (bv - xv) * m1 - av * m0;
    const double scale = std::max({std::abs(xv * m2), std::abs((bv - xv) * m1), std::abs(av * m0)});
    worst = std::max(worst, scale == 0.0 ? 0.0 : std::abs(residual) / scale);
  }
  bool terms_ok = true;
  for (int n = 0; n <= 30; ++n)
    for (double bv : {0.5, 1.0, 2.7})
      for (double xv : {0.0, 1.5, 40.0})
        terms_ok = terms_ok && special::kummer_m_detailed({-static_cast<double>(n), bv, xv}).terms ==
                                   static_cast<std::size_t>(n + 1);
  const bool pass = worst <= 1e-9 && terms_ok;
  return {pass, "100 samples, worst relative ODE residual " + fmt("%.3g", worst) + ", polynomial term counts " +
                    (terms_ok ? "n+1 for n = 0..30" : "WRONG")};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome a8_cli_determinism() {
  const std::filesystem::path source = DIRAC_RING_SOURCE_DIR;
  const auto config = source / "configs" / "demo_sweep.json";
  const auto golden = source / "tests" / "golden" / "demo_sweep.csv";
  const auto dir = std::filesystem::temp_directory_path();
  std::vector<std::string> outputs;
  for (int run = 0; run < 2; ++run) {
    const auto out = dir / ("dirac_ring_acceptance_sweep_" + std::to_string(run) + ".csv");
    std::filesystem::remove(out);
    const std::string cmd = std::string("\"") + DIRAC_RING_CLI + "\" sweep-flux --config \"" + config.string() +
                            "\" --out \"" + out.string() + "\"";
    if (std::system(cmd.c_str()) != 0) return {false, "CLI run " + std::to_string(run + 1) + " failed"};
    outputs.push_back(slurp(out));
  }
  const std::string expected = slurp(golden);
  const bool identical = !outputs[0].empty() && outputs[0] == outputs[1];
  const bool matches_golden = outputs[0] == expected;
  return {identical && matches_golden, std::string("two runs ") + (identical ? "byte-identical" : "DIFFER") + " (" +
                                           std::to_string(outputs[0].size()) + " bytes), golden file " +
                                           (matches_golden ? "matches" : "DIFFERS")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"A1", a1_closed_form_vs_oracle}, {"A2", a2_flux_periodicity}, {"A3", a3_current_derivative},
      {"A4", a4_spinor_residual},       {"A5", a5_limits},           {"A6", a6_wavefunction_structure},
      {"A7", a7_kummer},                {"A8", a8_cli_determinism},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %s %s\n", name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
