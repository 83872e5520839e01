// Acceptance suite: end-to-end checks of the published reference numbers at
// their stated tolerances, one [PASS]/[FAIL] line per criterion. Exit code is
// the number of failed criteria.
//
// Criterion 3 (the filtered thresholds for the maximally entangled family)
// is asserted against the published table values even though this library's
// verified pipeline reproduces them only under the as-printed closed-form
// variant; see README for the analysis. The check runs faithfully and is
// expected to flag the discrepancy rather than hide it.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cglmp/bell.hpp"
#include "cglmp/filtering.hpp"
#include "cglmp/measurements.hpp"
#include "cglmp/search.hpp"
#include "cglmp/states.hpp"

namespace {

using namespace cglmp;
using search::Engine;
using search::SearchOptions;
using search::StateKind;

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<bool(std::string&)> body;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

// --- 1. unfiltered thresholds --------------------------------------------

bool unfiltered_thresholds(std::string& detail) {
  const std::pair<int, double> targets[] = {{3, 0.696}, {4, 0.690}, {5, 0.687},
                                            {6, 0.684}, {7, 0.683}, {8, 0.682},
                                            {9, 0.681}, {10, 0.680}, {100, 0.674}};
  bool pass = true;
  std::ostringstream os;
  for (const auto& [d, target] : targets) {
    const double computed = bell::unfiltered_threshold(d);
    const bool ok = std::abs(computed - target) <= 0.002;
    pass = pass && ok;
    os << "d=" << d << ": " << fmt(computed) << (ok ? "" : " [off target " + fmt(target) + "]")
       << "; ";
  }
  detail = os.str();
  return pass;
}

// --- 2. two-qubit CHSH path ------------------------------------------------

bool chsh_two_qubit(std::string& detail) {
  bool pass = true;
  std::ostringstream os;
  double worst = 0.0;
  for (double q : {1.0, 0.83, 0.5, 0.31}) {
    const auto table = measurements::joint_probability_table(states::mixed_state(2, q));
    worst = std::max(worst, std::abs(bell::chsh_value(table).value - 2.0 * std::sqrt(2.0) * q));
  }
  pass = pass && worst <= 1e-10;
  os << "max |chsh - 2 sqrt(2) q| = " << fmt(worst);

  const auto r = search::q_threshold(2, 0.79, StateKind::MaxEntangled, true, 1e-5);
  const bool ok = std::abs(r.q_star - 0.665) <= 0.005;
  pass = pass && ok;
  os << "; filtered threshold at xi=0.79: " << fmt(r.q_star) << (ok ? "" : " [off 0.665]");
  detail = os.str();
  return pass;
}

// --- 3. filtered thresholds, maximally entangled ---------------------------

bool filtered_thresholds_max_entangled(std::string& detail) {
  struct Row {
    int d;
    double xi;
    double target;
  };
  const Row rows[] = {{3, 0.85, 0.664}, {4, 0.81, 0.648}, {5, 0.71, 0.627},
                      {6, 0.60, 0.610}, {7, 0.25, 0.524}};
  bool pass = true;
  std::ostringstream os;
  for (const auto& row : rows) {
    const auto r = search::q_threshold(row.d, row.xi, StateKind::MaxEntangled, true, 1e-4);
    const bool ok = !r.no_violation && std::abs(r.q_star - row.target) <= 0.005;
    pass = pass && ok;
    os << "d=" << row.d << "@" << fmt(row.xi) << ": " << fmt(r.q_star)
       << (r.whole_range ? " (feasible-domain floor)" : "") << " vs " << fmt(row.target)
       << (ok ? "" : " MISMATCH") << "; ";
  }
  // The published rows re-emerge from the as-printed closed form evaluated
  // without the delta <= 1 feasibility cut; print that reproduction so the
  // mismatch above is localized, not mysterious.
  os << "printed-form reproduction:";
  for (const auto& row : rows) {
    const auto printed = search::bisect_threshold(
        [&row](double q) { return filtering::filtered_cglmp_printed_form(row.d, q, row.xi); },
        1e-4, 1.0, 1e-5, 50);
    os << " d=" << row.d << ": " << fmt(printed.q_star) << ";";
  }

  bool deep = true;
  for (int d : {8, 9, 10}) {
    const double v = filtering::filtered_cglmp_closed_form(d, 0.05, 1e-3);
    deep = deep && v > 2.0;
    os << " d=" << d << " value(q=0.05, xi=1e-3) = " << fmt(v) << ";";
  }
  pass = pass && deep;
  detail = os.str();
  return pass;
}

// --- 4. maximally violating optima -----------------------------------------

bool schmidt_optima(std::string& detail) {
  struct Target {
    int d;
    double value;
    std::vector<double> gammas;
  };
  const Target targets[] = {{3, 2.915, {0.6169, 0.4888, 0.6169}},
                            {4, 2.972, {0.5686, 0.4204, 0.4204, 0.5686}},
                            {5, 3.0158, {0.5368, 0.3859, 0.3548, 0.3859, 0.5368}}};
  bool pass = true;
  std::ostringstream os;
  for (const auto& t : targets) {
    const auto opt = search::optimize_gammas(t.d);
    bool ok = std::abs(opt.value - t.value) <= 1e-3;
    // componentwise match, up to the reversal symmetry of the functional
    double direct = 0.0, reversed = 0.0;
    for (int j = 0; j < t.d; ++j) {
      direct = std::max(direct, std::abs(opt.gammas[j] - t.gammas[j]));
      reversed = std::max(reversed, std::abs(opt.gammas[t.d - 1 - j] - t.gammas[j]));
    }
    ok = ok && std::min(direct, reversed) <= 2e-3;
    pass = pass && ok;
    os << "d=" << t.d << ": value " << fmt(opt.value) << ", max gamma dev "
       << fmt(std::min(direct, reversed)) << (ok ? "" : " MISMATCH") << "; ";
  }
  detail = os.str();
  return pass;
}

// --- 5. filtered thresholds, maximally violating ---------------------------

bool filtered_thresholds_max_violating(std::string& detail) {
  struct Row {
    int d;
    double xi;
    double target;
  };
  const Row rows[] = {{3, 0.73, 0.625}, {4, 0.64, 0.585}, {5, 0.54, 0.539}};
  SearchOptions oracle;
  oracle.engine = Engine::Oracle;  // the full density-matrix pipeline
  bool pass = true;
  std::ostringstream os;
  for (const auto& row : rows) {
    const auto r = search::q_threshold(row.d, row.xi, StateKind::MaxViolating, true, 1e-4, oracle);
    const bool ok = !r.no_violation && std::abs(r.q_star - row.target) <= 0.005;
    pass = pass && ok;
    os << "d=" << row.d << "@" << fmt(row.xi) << ": " << fmt(r.q_star) << " vs " << fmt(row.target)
       << (ok ? "" : " MISMATCH") << "; ";
  }
  detail = os.str();
  return pass;
}

// --- 6. oracle / closed-form equivalence ------------------------------------

bool oracle_closed_form_equivalence(std::string& detail) {
  std::mt19937_64 rng(0xacce55);
  std::uniform_real_distribution<double> uq(0.25, 1.0);
  std::uniform_real_distribution<double> ux(0.05, 1.0);
  double worst_value = 0.0, worst_cell = 0.0;
  for (int d = 2; d <= 10; ++d)
    for (int s = 0; s < 20; ++s) {
      const double q = uq(rng);
      const double xi = ux(rng) * std::sqrt(q);
      const auto filtered = filtering::apply_filters(states::mixed_state(d, q),
                                                     filtering::FilterPair::coupled(d, xi, q));
      const auto table = measurements::joint_probability_table(filtered.rho_f);
      worst_value = std::max(worst_value,
                             std::abs(bell::cglmp_value(table).value -
                                      filtering::filtered_cglmp_closed_form(d, q, xi)));
      for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b)
          for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l)
              worst_cell = std::max(worst_cell,
                                    std::abs(table.at(a, b, k, l) -
                                             filtering::filtered_prob_closed_form(d, q, xi, a, b, k, l)));
    }
  detail = "max value |diff| = " + fmt(worst_value) + ", max cell |diff| = " + fmt(worst_cell) +
           " over d = 2..10, 20 samples each";
  return worst_value <= 1e-10 && worst_cell <= 1e-10;
}

// --- 7. property suite -------------------------------------------------------

bool property_suite(std::string& detail) {
  std::mt19937_64 rng(0x9701u);
  std::ostringstream os;
  bool pass = true;
  auto report = [&](const char* name, double worst, double tol) {
    const bool ok = worst <= tol;
    pass = pass && ok;
    os << name << ": " << fmt(worst) << (ok ? "" : " EXCEEDS") << "; ";
  };

  std::normal_distribution<double> gauss;
  auto random_rho = [&](int n) {
    qmath::ComplexMatrix a(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = qmath::Complex{gauss(rng), gauss(rng)};
    auto rho = a * qmath::dagger(a);
    rho *= 1.0 / qmath::trace(rho).real();
    return rho;
  };

  // no-signaling + normalization on random states
  double ns = 0.0, norm = 0.0;
  for (int d : {2, 3, 4, 5})
    for (int s = 0; s < 4; ++s) {
      const auto table = measurements::joint_probability_table(random_rho(d * d));
      for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) {
          double sum = 0.0;
          for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) sum += table.at(a, b, k, l);
          norm = std::max(norm, std::abs(sum - 1.0));
        }
      for (int k = 0; k < d; ++k)
        for (int x = 1; x <= 2; ++x) {
          double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0;
          for (int l = 0; l < d; ++l) {
            a1 += table.at(x, 1, k, l);
            a2 += table.at(x, 2, k, l);
            b1 += table.at(1, x, l, k);
            b2 += table.at(2, x, l, k);
          }
          ns = std::max({ns, std::abs(a1 - a2), std::abs(b1 - b2)});
        }
    }
  report("no-signaling", ns, 1e-10);
  report("normalization", norm, 1e-10);

  // shift symmetry of filtered mixtures
  double sym = 0.0;
  for (int d : {3, 5, 7}) {
    const auto filtered = filtering::apply_filters(
        states::mixed_state(d, 0.7), filtering::FilterPair::coupled(d, 0.5, 0.7));
    const auto table = measurements::joint_probability_table(filtered.rho_f);
    for (int a = 1; a <= 2; ++a)
      for (int b = 1; b <= 2; ++b)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l)
            for (int c = 1; c < d; ++c)
              sym = std::max(sym, std::abs(table.at(a, b, k, l) -
                                           table.at(a, b, (k + c) % d, (l + c) % d)));
  }
  report("shift-symmetry", sym, 1e-10);

  // identity filter fixed point
  double fixed_point = 0.0;
  for (int d : {2, 4})
    for (int s = 0; s < 3; ++s) {
      const auto rho = random_rho(d * d);
      fixed_point = std::max(fixed_point,
                             filtering::apply_filters(rho, filtering::FilterPair::identity(d))
                                 .rho_f.max_abs_diff(rho));
    }
  report("identity-filter", fixed_point, 1e-12);

  // success probability vs closed form
  double nd = 0.0;
  std::uniform_real_distribution<double> uq(0.2, 1.0);
  std::uniform_real_distribution<double> ux(0.05, 1.0);
  for (int d = 2; d <= 10; ++d) {
    const double q = uq(rng);
    const double xi = ux(rng) * std::sqrt(q);
    nd = std::max(nd, std::abs(filtering::apply_filters(states::mixed_state(d, q),
                                                        filtering::FilterPair::coupled(d, xi, q))
                                   .success_prob -
                               filtering::normalization_factor(d, q, xi)));
  }
  report("success-prob", nd, 1e-12);

  // linearity in q
  double lin = 0.0;
  for (int d = 2; d <= 10; ++d) {
    const double base =
        bell::cglmp_value(measurements::joint_probability_table(states::max_entangled(d))).value;
    const double q = uq(rng);
    lin = std::max(lin, std::abs(bell::cglmp_value(measurements::joint_probability_table(
                                                       states::mixed_state(d, q)))
                                     .value -
                                 q * base));
  }
  report("linearity", lin, 1e-10);

  // d = 2 CGLMP/CHSH equivalence on 100 random states
  double equiv = 0.0;
  for (int s = 0; s < 100; ++s) {
    const auto table = measurements::joint_probability_table(random_rho(4));
    equiv = std::max(equiv,
                     std::abs(bell::cglmp_value(table).value - bell::chsh_value(table).value));
  }
  report("cglmp-chsh-d2", equiv, 1e-10);

  detail = os.str();
  return pass;
}

// --- 8. published rational fits ---------------------------------------------

bool rational_function_targets(std::string& detail) {
  double worst = 0.0;
  int cells = 0;
  for (int d : {3, 4, 5}) {
    const states::SchmidtCoefficients coeffs(search::maximally_violating_gammas(d).gammas);
    const auto psi = states::schmidt_state(coeffs);
    auto rat = d == 3   ? filtering::filtered_rational_d3
               : d == 4 ? filtering::filtered_rational_d4
                        : filtering::filtered_rational_d5;
    for (int iq = 0; iq < 10; ++iq)
      for (int ix = 0; ix < 10; ++ix) {
        const double q = 0.70 + 0.29 * iq / 9.0;
        const double xi = (0.45 + 0.40 * ix / 9.0) * std::sqrt(q);
        const auto filtered = filtering::apply_filters(
            states::mixed_state(states::MixedStateParams(d, q, psi)),
            filtering::FilterPair::coupled(d, xi, q));
        const double oracle =
            bell::cglmp_value(measurements::joint_probability_table(filtered.rho_f)).value;
        if (oracle <= 2.0) continue;
        ++cells;
        worst = std::max(worst, std::abs(oracle - rat(q, xi)));
      }
  }
  detail = "max |fit - oracle| = " + fmt(worst) + " over " + std::to_string(cells) +
           " violating cells";
  return worst <= 2e-2 && cells > 0;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
  }

  std::vector<Criterion> criteria = {
      {1, "unfiltered_thresholds", 1.0, unfiltered_thresholds},
      {2, "chsh_two_qubit", 5.0, chsh_two_qubit},
      {3, "filtered_thresholds_max_entangled", 60.0, filtered_thresholds_max_entangled},
      {4, "schmidt_optima", 120.0, schmidt_optima},
      {5, "filtered_thresholds_max_violating", 60.0, filtered_thresholds_max_violating},
      {6, "oracle_closed_form_equivalence", 30.0, oracle_closed_form_equivalence},
      {7, "property_suite", 30.0, property_suite},
      {8, "rational_function_targets", 10.0, rational_function_targets},
  };

  int failures = 0;
  for (auto& criterion : criteria) {
    if (only != 0 && criterion.id != only) continue;
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    try {
      pass = criterion.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > criterion.budget_seconds) {
      pass = false;
      detail += " [over budget " + fmt(criterion.budget_seconds) + " s]";
    }
    if (!pass) ++failures;
    std::printf("[%s] %d %s (%.2f s): %s\n", pass ? "PASS" : "FAIL", criterion.id,
                criterion.name.c_str(), elapsed, detail.c_str());
  }
  if (only == 0)
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
  return failures;
}
