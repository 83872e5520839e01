#include "cglmp/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "cglmp/bell.hpp"
#include "cglmp/filtering.hpp"
#include "cglmp/measurements.hpp"

namespace cglmp::search {

namespace {

constexpr double kXiGridStep = 0.01;
constexpr double kXiFloor = 1e-3;
constexpr double kGolden = 0.618033988749894848;

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t nt = threads > 0 ? static_cast<std::size_t>(threads) : (hw ? hw : 1);
  nt = std::min<std::size_t>(std::max<std::size_t>(nt, 1), n);
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (std::size_t i = t; i < n; i += nt) fn(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<double> resolve_gammas(int d, const SearchOptions& options) {
  if (options.gammas) {
    if (static_cast<int>(options.gammas->size()) != d)
      throw std::invalid_argument("gammas override has wrong length");
    return *options.gammas;
  }
  if (d == 2) return {std::sqrt(0.5), std::sqrt(0.5)};  // d = 2 optimum is maximally entangled
  return maximally_violating_gammas(d).gammas;
}

double oracle_value(int d, double q, double xi, bool filtered,
                    const states::StateVector& psi) {
  auto rho = states::mixed_state(states::MixedStateParams(d, q, psi));
  if (filtered) {
    const auto f = filtering::FilterPair::coupled(d, xi, q);
    rho = filtering::apply_filters(rho, f).rho_f;
  }
  return bell::cglmp_value(measurements::joint_probability_table(rho)).value;
}

// Bell value as a function of q for a fixed protocol. The d = 2 filtered
// path evaluates the measurement-optimized CHSH value of the filtered state;
// everything else is the CGLMP value.
std::function<double(double)> value_function(int d, double xi, StateKind state_kind,
                                             bool filtered, const SearchOptions& options) {
  if (d < 2) throw std::domain_error("d must be >= 2");
  if (filtered && (xi < 0.0 || xi > 1.0)) throw std::domain_error("xi must be in [0, 1]");
  const bool oracle = options.engine == Engine::Oracle;
  if (oracle && d > options.oracle_cap)
    throw std::invalid_argument("oracle engine requested beyond oracle_cap");

  if (d == 2 && filtered) {
    return [d, xi](double q) {
      auto rho = states::mixed_state(d, q);
      const auto f = filtering::FilterPair::coupled(d, xi, q);
      return bell::chsh_optimal(filtering::apply_filters(rho, f).rho_f);
    };
  }

  if (state_kind == StateKind::MaxEntangled) {
    if (oracle) {
      return [d, xi, filtered](double q) {
        return oracle_value(d, q, xi, filtered, states::max_entangled(d));
      };
    }
    if (filtered) {
      return [d, xi](double q) { return filtering::filtered_cglmp_closed_form(d, q, xi); };
    }
    const double opt = bell::cglmp_closed_form_optimal(d);
    return [opt](double q) { return q * opt; };
  }

  // MaxViolating
  const auto gammas = resolve_gammas(d, options);
  const states::SchmidtCoefficients coeffs(gammas);
  if (oracle) {
    const auto psi = states::schmidt_state(coeffs);
    return [d, xi, filtered, psi](double q) { return oracle_value(d, q, xi, filtered, psi); };
  }
  if (filtered) {
    return [coeffs, xi](double q) { return filtering::filtered_schmidt_cglmp(coeffs, q, xi); };
  }
  const double base =
      bell::cglmp_value(measurements::joint_probability_table(states::schmidt_state(coeffs)))
          .value;
  return [base](double q) { return q * base; };
}

}  // namespace

Crossing bisect_threshold(const std::function<double(double)>& f, double lo, double hi,
                          double tol, int prescan_points) {
  if (!(tol > 0.0)) throw std::invalid_argument("bisect_threshold: tol must be positive");
  if (lo > hi) throw std::invalid_argument("bisect_threshold: empty interval");
  const int n = std::max(prescan_points, 2);
  if (hi - lo < 1e-15) {
    const double v = f(hi);
    return Crossing{hi, v, v <= bell::kLocalBound, v > bell::kLocalBound};
  }

  std::vector<std::pair<double, double>> scan;
  scan.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Endpoints sampled exactly: lo + (hi-lo) can overshoot hi by an ulp.
    const double q = i == 0 ? lo : (i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1));
    scan.emplace_back(q, f(q));
  }

  int transitions = 0;
  for (int i = 1; i < n; ++i)
    if ((scan[i].second > bell::kLocalBound) != (scan[i - 1].second > bell::kLocalBound))
      ++transitions;

  if (transitions == 0) {
    if (scan.front().second > bell::kLocalBound)
      return Crossing{lo, scan.front().second, false, true};
    return Crossing{0.0, scan.back().second, true, false};
  }
  if (transitions > 1 || scan.front().second > bell::kLocalBound)
    throw MultiCrossingError("bell value crosses the local bound more than once (or downward)",
                             std::move(scan));

  int idx = 1;
  while (!(scan[idx].second > bell::kLocalBound)) ++idx;
  double a = scan[idx - 1].first;
  double b = scan[idx].first;
  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    (f(mid) > bell::kLocalBound ? b : a) = mid;
  }
  const double q_star = 0.5 * (a + b);
  return Crossing{q_star, f(q_star), false, false};
}

ThresholdResult q_threshold(int d, double xi, StateKind state_kind, bool filtered, double tol,
                            const SearchOptions& options) {
  const auto f = value_function(d, xi, state_kind, filtered, options);
  const double lo = filtered ? std::max(xi * xi, options.q_min) : options.q_min;
  const auto crossing = bisect_threshold(f, std::min(lo, 1.0), 1.0, tol, options.prescan_points);

  ThresholdResult result;
  result.d = d;
  result.state_kind = state_kind;
  result.filtered = filtered;
  result.xi_star = filtered ? xi : 1.0;
  result.no_violation = crossing.no_violation;
  result.whole_range = crossing.whole_range;
  result.q_star = crossing.no_violation ? std::numeric_limits<double>::quiet_NaN()
                                        : crossing.q_star;
  result.bell_at_threshold = crossing.value;
  return result;
}

ThresholdResult optimize_xi(int d, StateKind state_kind, const SearchOptions& options) {
  // Effective objective: the smallest violating q reachable at this xi
  // (the domain floor xi^2 when the whole feasible range violates).
  auto objective = [&](double xi) -> std::pair<double, ThresholdResult> {
    ThresholdResult r = q_threshold(d, xi, state_kind, true, 1e-5, options);
    const double score =
        r.no_violation ? std::numeric_limits<double>::infinity() : r.q_star;
    return {score, r};
  };

  double best_xi = 0.0;
  double best_score = std::numeric_limits<double>::infinity();
  ThresholdResult best_result;
  for (int i = 1; i <= 100; ++i) {
    const double xi = i * kXiGridStep;
    auto [score, r] = objective(xi);
    if (score < best_score) {
      best_score = score;
      best_xi = xi;
      best_result = r;
    }
  }
  if (!std::isfinite(best_score)) {
    ThresholdResult r;
    r.d = d;
    r.state_kind = state_kind;
    r.filtered = true;
    r.no_violation = true;
    r.q_star = std::numeric_limits<double>::quiet_NaN();
    return r;
  }

  // Golden-section refinement around the best coarse cell.
  double a = std::max(best_xi - kXiGridStep, kXiFloor);
  double b = std::min(best_xi + kXiGridStep, 1.0);
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  auto [f1, r1] = objective(x1);
  auto [f2, r2] = objective(x2);
  while (b - a > 1e-4) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      r2 = r1;
      x1 = b - kGolden * (b - a);
      std::tie(f1, r1) = objective(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      r1 = r2;
      x2 = a + kGolden * (b - a);
      std::tie(f2, r2) = objective(x2);
    }
  }
  auto [fm, rm] = f1 <= f2 ? std::make_pair(f1, r1) : std::make_pair(f2, r2);
  return fm <= best_score ? rm : best_result;
}

GammaOptimum optimize_gammas(int d, const GammaOptions& options) {
  if (d < 3 || d > 8) throw std::domain_error("optimize_gammas: supported for 3 <= d <= 8");

  auto value_of = [d](const std::vector<double>& gammas) {
    const states::SchmidtCoefficients coeffs(gammas);
    return bell::cglmp_value(measurements::joint_probability_table(states::schmidt_state(coeffs)))
        .value;
  };
  auto normalize = [](std::vector<double>& g) {
    double s = 0.0;
    for (double x : g) s += x * x;
    s = std::sqrt(s);
    if (s <= 0.0) return false;
    for (double& x : g) x /= s;
    return true;
  };
  auto mirror = [d](std::vector<double>& g) {
    for (int j = 0; j < d / 2; ++j) g[d - 1 - j] = g[j];
  };

  // Deterministic restart profiles: uniform, then increasingly U-shaped
  // (the known optima weight the edge coefficients more heavily).
  auto start_profile = [d](int restart) {
    std::vector<double> g(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      const double u = (2.0 * j - (d - 1)) / (d - 1);
      g[j] = 1.0 + 0.45 * restart * u * u;
    }
    return g;
  };

  GammaOptimum best;
  best.d = d;
  best.value = -std::numeric_limits<double>::infinity();
  int total_sweeps = 0;
  bool converged_all = true;

  for (int restart = 0; restart < std::max(options.restarts, 1); ++restart) {
    std::vector<double> g = start_profile(restart);
    if (options.symmetric) mirror(g);
    normalize(g);
    double v = value_of(g);

    double step = 0.1;
    bool converged = false;
    while (total_sweeps < options.max_sweeps) {
      const double v_before = v;
      const int free_coords = options.symmetric ? (d + 1) / 2 : d;
      for (int i = 0; i < free_coords; ++i) {
        for (const double s : {step, -step}) {
          std::vector<double> cand = g;
          cand[i] = std::max(0.0, cand[i] + s);
          if (options.symmetric) mirror(cand);
          if (!normalize(cand)) continue;
          const double vc = value_of(cand);
          if (vc > v) {
            v = vc;
            g = std::move(cand);
          }
        }
      }
      ++total_sweeps;
      if (v - v_before < options.sweep_tol) {
        step *= 0.5;
        if (step < 1e-6) {
          converged = true;
          break;
        }
      }
    }
    converged_all = converged_all && converged;
    if (v > best.value) {
      best.value = v;
      best.gammas = g;
    }
  }

  best.converged = converged_all;
  best.sweeps = total_sweeps;
  return best;
}

const GammaOptimum& maximally_violating_gammas(int d) {
  static std::mutex cache_mutex;
  static std::map<int, GammaOptimum> cache;
  std::scoped_lock lock(cache_mutex);
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, optimize_gammas(d)).first;
  return it->second;
}

RegionGrid region_scan(int d, const std::vector<double>& q_grid,
                       const std::vector<double>& xi_grid, StateKind state_kind,
                       const SearchOptions& options) {
  if (q_grid.empty() || xi_grid.empty()) throw std::invalid_argument("region_scan: empty grid");
  auto monotone = [](const std::vector<double>& g) {
    for (std::size_t i = 1; i < g.size(); ++i)
      if (g[i] <= g[i - 1]) return false;
    return true;
  };
  if (!monotone(q_grid) || !monotone(xi_grid))
    throw std::invalid_argument("region_scan: grids must be strictly increasing");
  for (double q : q_grid)
    if (!(q > 0.0) || q > 1.0) throw std::invalid_argument("region_scan: q outside (0, 1]");
  for (double xi : xi_grid)
    if (xi < 0.0 || xi > 1.0) throw std::invalid_argument("region_scan: xi outside [0, 1]");

  RegionGrid grid;
  grid.d = d;
  grid.state_kind = state_kind;
  grid.q_values = q_grid;
  grid.xi_values = xi_grid;
  grid.values.assign(q_grid.size() * xi_grid.size(),
                     std::numeric_limits<double>::quiet_NaN());

  const std::size_t nxi = xi_grid.size();
  parallel_for(grid.values.size(), options.threads, [&](std::size_t idx) {
    const double q = q_grid[idx / nxi];
    const double xi = xi_grid[idx % nxi];
    if (xi > std::sqrt(q)) return;  // infeasible cell: coupled delta would exceed 1
    const auto f = value_function(d, xi, state_kind, true, options);
    grid.values[idx] = f(q);
  });
  return grid;
}

}  // namespace cglmp::search
