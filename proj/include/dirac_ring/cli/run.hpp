#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "dirac_ring/cli/config.hpp"

namespace dirac_ring::cli {

/// Exit codes of the command line tool.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,  ///< crosscheck reported a FAIL, I/O error, or unexpected error
  kValidation = 2,
  kNoBoundStates = 3,
  kOracleFailure = 4,
  kTauKink = 5,
};

using Cell = std::variant<long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Computes the table for one mode. Throws library errors unchanged.
/// `failed` is set when a crosscheck row does not pass.
Table compute(const RunConfig& cfg, bool allow_kinks, bool* failed = nullptr);

/// Header row plus one line per row; LF endings; reals as %.17g.
std::string render_csv(const Table& t);
/// {"meta": {"version", "config_hash"}, "rows": [{column: value, ...}, ...]}
std::string render_json(const Table& t, const RunConfig& cfg);

/// Worker count from DIRAC_RING_THREADS (unset or 0: hardware concurrency).
unsigned thread_count();

/// Full command line: `dirac-ring <mode> --config <file> [--set k=v]... [--out <path>]
/// [--format csv|json] [--allow-kinks]`. Diagnostics go to `err` as one JSON line.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dirac_ring::cli
