#include "cglmp/filtering.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cglmp/bell.hpp"

namespace cglmp::filtering {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegenerateTrace = 1e-14;

void check_coupled_domain(double q, double xi) {
  if (!(q > 0.0) || q > 1.0) throw std::domain_error("q must be in (0, 1]");
  if (xi < 0.0 || xi > 1.0) throw std::domain_error("xi must be in [0, 1]");
  if (xi > std::sqrt(q) + 1e-12)
    throw std::domain_error("coupled filter requires xi <= sqrt(q)");
}

// sign(sin(2 pi (alpha_a + beta_b))) for the standard offsets; the sum is
// 1/4, -1/4, 3/4 or 1/4 for (a,b) = (1,1), (1,2), (2,1), (2,2).
double cross_sign(int a, int b) {
  const measurements::PhaseOffsets std_offsets{};
  const double s = std_offsets.alpha(a) + std_offsets.beta(b);
  return std::sin(2.0 * kPi * s) >= 0.0 ? 1.0 : -1.0;
}

double s1_constant(int d, double q, double xi) {
  const double x2 = xi * xi;
  const double diff = x2 - std::sqrt(q);
  return (1.0 - q) * (d - 1) * x2 + (1.0 - q) * x2 * x2 / q + diff * diff;
}

double rational(double num, double den) {
  if (std::abs(den) < 1e-14) throw std::domain_error("rational fit: denominator underflow");
  return num / den;
}

}  // namespace

FilterPair::FilterPair(int d_, double xi_, double delta_) : d(d_), xi(xi_), delta(delta_) {
  if (d < 2) throw std::domain_error("FilterPair: d must be >= 2");
  if (xi < 0.0 || xi > 1.0 || delta < 0.0 || delta > 1.0)
    throw std::domain_error("FilterPair: attenuations must be in [0, 1]");
}

FilterPair FilterPair::coupled(int d, double xi, double q) {
  check_coupled_domain(q, xi);
  return FilterPair(d, xi, std::min(xi / std::sqrt(q), 1.0));
}

FilterPair FilterPair::identity(int d) { return FilterPair(d, 1.0, 1.0); }

qmath::ComplexMatrix filter_operator(int d, double p) {
  if (d < 2) throw std::domain_error("filter_operator: d must be >= 2");
  if (p < 0.0 || p > 1.0) throw std::domain_error("filter_operator: p must be in [0, 1]");
  std::vector<double> diag(static_cast<std::size_t>(d), 1.0);
  diag[0] = p;
  return qmath::ComplexMatrix::diagonal(diag);
}

FilteredState apply_filters(const states::DensityMatrix& rho, const FilterPair& f) {
  const std::size_t n = static_cast<std::size_t>(f.d) * f.d;
  if (rho.rows() != n || rho.cols() != n)
    throw std::invalid_argument("apply_filters: rho dimension does not match filter");

  // F_A (x) F_B is diagonal, so the conjugation is an entrywise scaling by
  // w_i w_j with w_{m*d+j} = (m==0 ? xi : 1)(j==0 ? delta : 1).
  std::vector<double> w(n);
  for (int m = 0; m < f.d; ++m)
    for (int j = 0; j < f.d; ++j)
      w[static_cast<std::size_t>(m) * f.d + j] = (m == 0 ? f.xi : 1.0) * (j == 0 ? f.delta : 1.0);

  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace += w[i] * w[i] * rho(i, i).real();
  if (trace <= kDegenerateTrace)
    throw DegenerateFilterError("apply_filters: filter annihilates the state");

  states::DensityMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = w[i] * w[j] * rho(i, j) / trace;
  return FilteredState{std::move(out), trace};
}

double normalization_factor(int d, double q, double xi) {
  check_coupled_domain(q, xi);
  const double x2 = xi * xi;
  return (q + (1.0 - q) * x2) * (1.0 - 1.0 / d) + x2 * x2 / (q * d);
}

double filtered_prob_closed_form(int d, double q, double xi, int a, int b, int k, int l) {
  check_coupled_domain(q, xi);
  if (k < 0 || k >= d || l < 0 || l >= d)
    throw std::domain_error("filtered_prob_closed_form: outcome out of range");
  const measurements::PhaseOffsets std_offsets{};
  const double x = (k - l) + std_offsets.alpha(a) + std_offsets.beta(b);
  const double theta = kPi * x / d;
  const double sq = std::sqrt(q);
  const double cross = sq * (xi * xi - sq);
  const double sin_t = std::sin(theta);
  const double val = q / (2.0 * sin_t * sin_t) +
                     cross * (cross_sign(a, b) * std::cos(theta) / sin_t + 1.0) +
                     s1_constant(d, q, xi);
  return val / (static_cast<double>(d) * d * d * normalization_factor(d, q, xi));
}

double filtered_cglmp_closed_form(int d, double q, double xi) {
  check_coupled_domain(q, xi);
  const double sq = std::sqrt(q);
  const double cross = sq * (xi * xi - sq);
  double total = 0.0;
  for (int k = 0; k < d / 2; ++k) {
    const double w = 1.0 - 2.0 * k / (d - 1);
    const double th = kPi * (k + 0.25) / d;  // difference c = k
    const double ph = kPi * (k + 0.75) / d;  // difference c = -(k+1)
    const double quad = q / 2.0 * (1.0 / (std::sin(th) * std::sin(th)) -
                                   1.0 / (std::sin(ph) * std::sin(ph)));
    const double lin = cross * (std::cos(th) / std::sin(th) + std::cos(ph) / std::sin(ph));
    total += w * (quad + lin);
  }
  return 4.0 / (static_cast<double>(d) * d * normalization_factor(d, q, xi)) * total;
}

double filtered_cglmp_printed_form(int d, double q, double xi) {
  // Deliberately unconstrained in xi vs sqrt(q): the published filtered
  // thresholds for this family sit partly where the coupled delta would
  // exceed 1, and this evaluator exists to reproduce them for comparison.
  if (!(q > 0.0) || q > 1.0) throw std::domain_error("q must be in (0, 1]");
  if (xi < 0.0 || xi > 1.0) throw std::domain_error("xi must be in [0, 1]");
  const double sq = std::sqrt(q);
  const double cross = sq * (xi * xi - sq);
  double total = 0.0;
  for (int k = 0; k < d / 2; ++k) {
    const double w = 1.0 - 2.0 * k / (d - 1);
    const double th = kPi * (k + 0.25) / d;
    const double ph = kPi * (k + 0.75) / d;
    const double quad = q / 2.0 * (1.0 / (std::sin(th) * std::sin(th)) -
                                   1.0 / (std::sin(ph) * std::sin(ph)));
    const double lin = cross * (1.0 / std::sin(th) + 1.0 / std::sin(ph));
    total += w * (quad + lin);
  }
  const double x2 = xi * xi;
  const double norm = (q + (1.0 - q) * x2) * (1.0 - 1.0 / d) + x2 * x2 / (q * d);
  return 4.0 / (static_cast<double>(d) * d * norm) * total;
}

double filtered_rational_d3(double q, double xi) {
  check_coupled_domain(q, xi);
  const double x2 = xi * xi, x4 = x2 * x2;
  const double num = 2.218 * x2 * std::sqrt(q) + 0.696 * q;
  const double den = x4 * (0.047 * q + 0.333) / q - 0.666 * x2 * (q - 1.0) + 0.619 * q;
  return rational(num, den);
}

double filtered_rational_d4(double q, double xi) {
  check_coupled_domain(q, xi);
  const double x2 = xi * xi, x4 = x2 * x2;
  const double num = -2.562 * x2 * q * std::sqrt(q) - 1.401 * q * q;
  const double den = -0.902 * q * q + x4 * (-0.097 * q - 0.333) - x2 * q * (1.0 - q);
  return rational(num, den);
}

double filtered_rational_d5(double q, double xi) {
  check_coupled_domain(q, xi);
  const double x2 = xi * xi, x4 = x2 * x2;
  const double num = -2.172 * x2 * q * std::sqrt(q) - 1.597 * q * q;
  const double den = -0.889 * q * q + x4 * (-0.110 * q - 0.25) - x2 * q * (1.0 - q);
  return rational(num, den);
}

measurements::JointProbabilityTable filtered_schmidt_table(
    const states::SchmidtCoefficients& gammas, double q, double xi,
    const measurements::PhaseOffsets& offsets) {
  check_coupled_domain(q, xi);
  const int d = gammas.d();
  const double delta = std::min(xi / std::sqrt(q), 1.0);

  // Filtered pure part: F (sum_j g_j |jj>) scales only the j = 0 amplitude.
  std::vector<double> fg(gammas.gammas());
  fg[0] *= xi * delta;
  double fg_norm2 = 0.0;
  for (double g : fg) fg_norm2 += g * g;

  // Filtered noise block is diagonal in the computational basis; every Born
  // probability against the Fourier vectors is the same constant.
  const double noise_trace = xi * xi * (delta * delta + d - 1) / d;
  const double total = q * fg_norm2 + (1.0 - q) * noise_trace;
  if (total <= kDegenerateTrace)
    throw DegenerateFilterError("filtered_schmidt_table: filter annihilates the state");
  const double noise_cell = (1.0 - q) * noise_trace / (static_cast<double>(d) * d);

  measurements::JointProbabilityTable table(d);
  for (int a = 1; a <= 2; ++a)
    for (int k = 0; k < d; ++k) {
      const auto va = measurements::alice_eigenvector(d, a, k, offsets);
      for (int b = 1; b <= 2; ++b)
        for (int l = 0; l < d; ++l) {
          const auto vb = measurements::bob_eigenvector(d, b, l, offsets);
          qmath::Complex amp = 0.0;
          for (int j = 0; j < d; ++j) amp += std::conj(va[j] * vb[j]) * fg[j];
          table.set(a, b, k, l, (q * std::norm(amp) + noise_cell) / total);
        }
    }
  table.finalize();
  return table;
}

double filtered_schmidt_cglmp(const states::SchmidtCoefficients& gammas, double q, double xi) {
  return bell::cglmp_value(filtered_schmidt_table(gammas, q, xi)).value;
}

}  // namespace cglmp::filtering
