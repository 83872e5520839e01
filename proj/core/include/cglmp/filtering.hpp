// Diagonal local filters F_A = diag(xi, 1, ..., 1), F_B = diag(delta, 1, ..., 1)
// applied with post-selection:
//   rho_F = (F_A (x) F_B) rho (F_A (x) F_B)^dagger / success_prob.
// The coupled strategy sets delta = xi / sqrt(q), which requires xi <= sqrt(q)
// to keep delta a legal attenuation.
//
// For the maximally entangled mixture the filtered joint probabilities have a
// closed form. The cross term comes from evaluating 2 Re sum_j exp(i 2pi j x/d)
// with x = k - l + alpha_a + beta_b: the exact value is
//   sigma * cot(pi x / d) + 1,   sigma = sign(sin(2 pi (alpha_a + beta_b))),
// which the brute-force density-matrix pipeline confirms to machine precision.
// A widely quoted simplification replaces it by sigma / sin(pi x / d); that
// variant is kept here as filtered_cglmp_printed_form purely as a regression
// and defect-localization target -- it is not used by any search path.

#pragma once

#include "cglmp/measurements.hpp"
#include "cglmp/qmath.hpp"
#include "cglmp/states.hpp"

namespace cglmp::filtering {

// Raised when the filter annihilates (numerically) all of the state's support.
class DegenerateFilterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Attenuations of the |0> component on each side, both in [0, 1].
struct FilterPair {
  FilterPair(int d, double xi, double delta);

  // The coupled strategy delta = xi / sqrt(q); throws std::domain_error when
  // xi > sqrt(q) (delta would exceed 1).
  static FilterPair coupled(int d, double xi, double q);
  static FilterPair identity(int d);

  int d;
  double xi;
  double delta;
};

struct FilteredState {
  states::DensityMatrix rho_f;  // unit trace, Hermitian, PSD
  double success_prob;          // Tr[(F_A (x) F_B) rho (F_A (x) F_B)^dagger]
};

// diag(p, 1, ..., 1) on d dimensions; p must lie in [0, 1].
qmath::ComplexMatrix filter_operator(int d, double p);

// Filter-and-renormalize. Throws DegenerateFilterError when the success
// probability falls below 1e-14.
FilteredState apply_filters(const states::DensityMatrix& rho, const FilterPair& f);

// N_d = [q + (1-q) xi^2](1 - 1/d) + xi^4/(q d): the success probability of the
// coupled filter on the maximally entangled mixture.
double normalization_factor(int d, double q, double xi);

// Closed-form filtered joint probability P^F(A_a = k, B_b = l) for the
// maximally entangled mixture under the coupled filter and the standard
// phase offsets. Matches the density-matrix pipeline within 1e-10.
double filtered_prob_closed_form(int d, double q, double xi, int a, int b, int k, int l);

// Closed-form filtered CGLMP value (the constant terms cancel in the signed
// combination). Equals the brute-force pipeline within 1e-10; reduces to
// cglmp_closed_form_optimal(d) at q = 1, xi = 1.
double filtered_cglmp_closed_form(int d, double q, double xi);

// The as-printed variant with the 1/sin cross term (see header comment).
// Deviates from the brute-force pipeline away from xi^2 = sqrt(q)*q; kept as
// a documented localization target, never used for search.
double filtered_cglmp_printed_form(int d, double q, double xi);

// Published per-dimension rational fits for the filtered CGLMP value of the
// maximally violating Schmidt states (coefficients quoted to 3 decimals).
// Verbatim evaluation; throws std::domain_error when the denominator
// magnitude falls below 1e-14.
double filtered_rational_d3(double q, double xi);
double filtered_rational_d4(double q, double xi);
double filtered_rational_d5(double q, double xi);

// Joint probability table of the filtered Schmidt mixture without building
// the d^2 x d^2 matrix: the filtered state is q' |F psi><F psi| plus a
// computational-basis-diagonal noise block whose Born probabilities are
// constant across cells. Identical to the brute-force pipeline.
measurements::JointProbabilityTable filtered_schmidt_table(
    const states::SchmidtCoefficients& gammas, double q, double xi,
    const measurements::PhaseOffsets& offsets = {});

// CGLMP value of the above.
double filtered_schmidt_cglmp(const states::SchmidtCoefficients& gammas, double q, double xi);

}  // namespace cglmp::filtering
