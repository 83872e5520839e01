// Parameter-space exploration: mixing-parameter thresholds by bisection
// (guarded by a monotonicity pre-scan), filter-attenuation optimization by
// coarse scan + golden-section refinement, Schmidt-coefficient optimization
// by projected coordinate descent, and (q, xi) region grids.

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cglmp/states.hpp"

namespace cglmp::search {

enum class StateKind { MaxEntangled, MaxViolating };

// Which evaluator backs a Bell-value query. Auto picks the closed form /
// reduced pipeline; Oracle forces the full density-matrix path (capped at
// oracle_cap, default 16).
enum class Engine { Auto, Oracle };

struct SearchOptions {
  Engine engine = Engine::Auto;
  int oracle_cap = 16;
  double q_min = 1e-6;
  int prescan_points = 50;
  int threads = 0;  // 0 = hardware concurrency
  std::optional<std::vector<double>> gammas;  // override for MaxViolating
};

// Raised when the pre-scan sees the Bell value cross the local bound more
// than once on the searched interval; the scan samples ride along.
class MultiCrossingError : public std::runtime_error {
 public:
  MultiCrossingError(std::string message, std::vector<std::pair<double, double>> scan)
      : std::runtime_error(std::move(message)), scan_(std::move(scan)) {}
  const std::vector<std::pair<double, double>>& scan() const { return scan_; }

 private:
  std::vector<std::pair<double, double>> scan_;
};

struct ThresholdResult {
  int d = 0;
  StateKind state_kind = StateKind::MaxEntangled;
  double q_star = 0.0;          // smallest violating q located
  double xi_star = 1.0;         // the filter attenuation used (1 when unfiltered)
  double bell_at_threshold = 0.0;
  bool filtered = false;
  bool no_violation = false;    // no q in the searched domain violates
  bool whole_range = false;     // every feasible q violates; q_star is the domain floor
};

struct RegionGrid {
  int d = 0;
  StateKind state_kind = StateKind::MaxEntangled;
  std::vector<double> q_values;
  std::vector<double> xi_values;
  // Row-major [iq * xi_values.size() + ixi]; NaN marks infeasible cells
  // (xi > sqrt(q)), which are never evaluated.
  std::vector<double> values;

  double at(std::size_t iq, std::size_t ixi) const { return values[iq * xi_values.size() + ixi]; }
};

struct GammaOptions {
  int restarts = 2;        // deterministic schedule: uniform, then U-shaped profiles
  bool symmetric = false;  // enforce gamma_j = gamma_{d+1-j}
  int max_sweeps = 20000;
  double sweep_tol = 1e-8;
};

struct GammaOptimum {
  int d = 0;
  std::vector<double> gammas;
  double value = 0.0;
  bool converged = false;
  int sweeps = 0;
};

// Generic bisection helper: locates the first upward crossing of f through
// kLocalBound on [lo, hi]. Exposed for direct testing of the crossing logic.
struct Crossing {
  double q_star;
  double value;
  bool no_violation;
  bool whole_range;
};
Crossing bisect_threshold(const std::function<double(double)>& f, double lo, double hi,
                          double tol, int prescan_points);

// Smallest violating mixing parameter at fixed filter attenuation. For
// filtered searches the domain is q in [max(xi^2, q_min), 1] so that the
// coupled delta stays legal. d = 2 filtered uses the measurement-optimized
// CHSH value (the published two-qubit protocol); all other paths use the
// CGLMP value.
ThresholdResult q_threshold(int d, double xi, StateKind state_kind, bool filtered,
                            double tol = 1e-4, const SearchOptions& options = {});

// Coarse xi grid (step 0.01 on (0, 1]) followed by golden-section refinement;
// returns the attenuation minimizing the located q threshold.
ThresholdResult optimize_xi(int d, StateKind state_kind, const SearchOptions& options = {});

// Maximize the q = 1 CGLMP value over Schmidt coefficients on the sphere
// sum gamma^2 = 1 (projected coordinate descent with shrinking step,
// restarted from a deterministic schedule). Requires 3 <= d <= 8.
GammaOptimum optimize_gammas(int d, const GammaOptions& options = {});

// Cached per-d optimum used by the MaxViolating search paths.
const GammaOptimum& maximally_violating_gammas(int d);

// Bell value at every feasible grid cell (filtered, coupled delta).
RegionGrid region_scan(int d, const std::vector<double>& q_grid,
                       const std::vector<double>& xi_grid, StateKind state_kind,
                       const SearchOptions& options = {});

}  // namespace cglmp::search
