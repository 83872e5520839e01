#include "cglmp/states.hpp"

#include <cmath>
#include <stdexcept>

namespace cglmp::states {

namespace {
constexpr double kNormTol = 1e-10;
}

SchmidtCoefficients::SchmidtCoefficients(std::vector<double> gammas) : gammas_(std::move(gammas)) {
  if (gammas_.size() < 2) throw std::invalid_argument("SchmidtCoefficients: need d >= 2");
  double sumsq = 0.0;
  for (double g : gammas_) {
    if (g < 0.0) throw std::invalid_argument("SchmidtCoefficients: negative coefficient");
    sumsq += g * g;
  }
  if (std::abs(sumsq - 1.0) > kNormTol)
    throw std::invalid_argument("SchmidtCoefficients: squares must sum to 1");
}

SchmidtCoefficients SchmidtCoefficients::uniform(int d) {
  if (d < 2) throw std::domain_error("uniform: d must be >= 2");
  return SchmidtCoefficients(std::vector<double>(d, 1.0 / std::sqrt(static_cast<double>(d))));
}

MixedStateParams::MixedStateParams(int d_, double q_, StateVector psi_)
    : d(d_), q(q_), psi(std::move(psi_)) {
  if (d < 2) throw std::domain_error("MixedStateParams: d must be >= 2");
  if (!(q > 0.0) || q > 1.0) throw std::domain_error("MixedStateParams: q must be in (0, 1]");
  if (psi.dim() != static_cast<std::size_t>(d) * d)
    throw std::invalid_argument("MixedStateParams: psi must live on d^2 dimensions");
  if (std::abs(psi.norm() - 1.0) > kNormTol)
    throw std::invalid_argument("MixedStateParams: psi must be normalized");
}

StateVector max_entangled(int d) {
  if (d < 2) throw std::domain_error("max_entangled: d must be >= 2");
  StateVector v(static_cast<std::size_t>(d) * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) v[static_cast<std::size_t>(j) * d + j] = amp;
  return v;
}

StateVector schmidt_state(const SchmidtCoefficients& gammas) {
  const int d = gammas.d();
  StateVector v(static_cast<std::size_t>(d) * d);
  for (int j = 0; j < d; ++j) v[static_cast<std::size_t>(j) * d + j] = gammas[j];
  return v;
}

DensityMatrix color_noise(int d) {
  if (d < 2) throw std::domain_error("color_noise: d must be >= 2");
  const std::size_t n = static_cast<std::size_t>(d) * d;
  DensityMatrix m(n, n);
  // |0><0| (x) I/d occupies the first d diagonal slots (Alice index 0).
  for (int j = 0; j < d; ++j) m(j, j) = 1.0 / d;
  return m;
}

DensityMatrix mixed_state(const MixedStateParams& params) {
  DensityMatrix rho = qmath::outer(params.psi, params.psi);
  rho *= params.q;
  DensityMatrix noise = color_noise(params.d);
  noise *= (1.0 - params.q);
  rho += noise;
  return rho;
}

DensityMatrix mixed_state(int d, double q) {
  return mixed_state(MixedStateParams(d, q, max_entangled(d)));
}

}  // namespace cglmp::states
