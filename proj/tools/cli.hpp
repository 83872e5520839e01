// Command-line front end: single values, thresholds, filter optimization,
// Schmidt-coefficient optimization, region grids as CSV/JSON, reference-table
// reproduction and the cross-check battery. Kept as a library so the whole
// surface is testable without spawning processes.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cglmp/search.hpp"

namespace cglmp::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 2;
inline constexpr int kConsistencyError = 3;
inline constexpr int kIoError = 4;

enum class Command { Value, Threshold, Optimize, Gammas, Region, Tables, Verify };
enum class OutputFormat { Json, Csv };

struct GridSpec {
  double min = 0.0;
  double max = 1.0;
  double step = 0.01;

  std::vector<double> points() const;
};

struct RunConfig {
  Command command = Command::Value;
  int d = 3;
  std::optional<double> q;
  std::optional<double> xi;
  search::StateKind state_kind = search::StateKind::MaxEntangled;
  bool filtered = false;
  search::Engine engine = search::Engine::Auto;
  OutputFormat output_format = OutputFormat::Json;
  std::optional<std::string> output_path;
  int oracle_cap = 16;
  int threads = 0;
  double tol = 1e-4;
  std::optional<std::vector<double>> gammas;
  int restarts = 2;
  bool symmetric = false;
  GridSpec q_grid{0.5, 1.0, 0.01};
  GridSpec xi_grid{0.01, 1.0, 0.01};
  int which_table = 1;
  int verify_dmax = 10;
  int verify_samples = 20;
};

// Execute a validated configuration; results go to `out` or to
// config.output_path, diagnostics to `err`. Deterministic output for
// identical configurations.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parse argv into a RunConfig and run it. Malformed flags produce usage text
// on `err` and exit code 2.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// RFC-4180-style CSV with header d,q,xi,value,violated; infeasible cells are
// omitted; floats carry at most 10 significant digits; rows sorted by (q, xi).
void emit_region_csv(const search::RegionGrid& grid, std::ostream& out);

}  // namespace cglmp::cli
