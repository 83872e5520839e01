// Bipartite state constructors: the maximally entangled qudit pair, Schmidt
// states with arbitrary coefficients, and the mixed family
//   rho_d = q |psi><psi| + (1-q) |0><0| (x) I_d/d
// that the rest of the library studies. The noise term sits on Alice's side
// by construction; the bipartite index (j_A, j_B) flattens to j_A*d + j_B.

#pragma once

#include <vector>

#include "cglmp/qmath.hpp"

namespace cglmp::states {

using StateVector = qmath::ComplexVector;
using DensityMatrix = qmath::ComplexMatrix;

// Schmidt coefficients gamma_1..gamma_d: non-negative, sum of squares 1
// (within 1e-10). Validated on construction.
class SchmidtCoefficients {
 public:
  explicit SchmidtCoefficients(std::vector<double> gammas);

  int d() const { return static_cast<int>(gammas_.size()); }
  const std::vector<double>& gammas() const { return gammas_; }
  double operator[](std::size_t j) const { return gammas_[j]; }

  static SchmidtCoefficients uniform(int d);

 private:
  std::vector<double> gammas_;
};

// Parameters of the mixed family: dimension d >= 2, mixing weight
// 0 < q <= 1, and a normalized pure state on the d^2-dimensional space.
// q = 0 is rejected: the coupled filter delta = xi/sqrt(q) degenerates there.
struct MixedStateParams {
  MixedStateParams(int d, double q, StateVector psi);

  int d;
  double q;
  StateVector psi;
};

// (1/sqrt(d)) sum_j |j>|j>. Requires d >= 2.
StateVector max_entangled(int d);

// sum_j gamma_j |j>|j>; equals max_entangled(d) for uniform coefficients.
StateVector schmidt_state(const SchmidtCoefficients& gammas);

// Color noise |0><0| (x) I_d/d.
DensityMatrix color_noise(int d);

// q |psi><psi| + (1-q) |0><0| (x) I_d/d. Hermitian, PSD, unit trace.
DensityMatrix mixed_state(const MixedStateParams& params);

// Convenience overload for the maximally entangled family.
DensityMatrix mixed_state(int d, double q);

}  // namespace cglmp::states
