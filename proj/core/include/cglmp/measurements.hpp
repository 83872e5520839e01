// Fourier-family measurement bases and joint outcome probabilities.
//
// Alice's setting a has eigenvectors
//   |k>_{A_a} = (1/sqrt(d)) sum_j exp(i 2pi/d j (k + alpha_a)) |j>
// and Bob's setting b
//   |l>_{B_b} = (1/sqrt(d)) sum_j exp(i 2pi/d j (-l + beta_b)) |j>,
// with default phase fractions alpha = (0, 1/2), beta = (1/4, -1/4).
// joint_probability_table is the brute-force Born-rule path used as the
// oracle against every closed form in the library.

#pragma once

#include <array>
#include <vector>

#include "cglmp/qmath.hpp"
#include "cglmp/states.hpp"

namespace cglmp::measurements {

// Raised when a Born-rule probability carries an imaginary residue beyond
// tolerance (i.e. the input was not a valid Hermitian state).
class NumericalConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Phase fractions are injectable so the optimality of the default choice can
// itself be probed by perturbation.
struct PhaseOffsets {
  double alpha1 = 0.0;
  double alpha2 = 0.5;
  double beta1 = 0.25;
  double beta2 = -0.25;

  double alpha(int a) const;  // a in {1, 2}
  double beta(int b) const;   // b in {1, 2}

  // True when the offsets are the default quadruple the closed forms assume.
  bool is_standard(double tol = 1e-12) const;
};

// P(A_a = k, B_b = l) for a, b in {1, 2} and k, l in {0..d-1}.
// Entries are clamped to [0, 1] after an imaginary-residue check; each
// (a, b) slice sums to 1 within 1e-10.
class JointProbabilityTable {
 public:
  explicit JointProbabilityTable(int d);

  int d() const { return d_; }
  double at(int a, int b, int k, int l) const { return tables_[index(a, b)][cell(k, l)]; }
  void set(int a, int b, int k, int l, double p) { tables_[index(a, b)][cell(k, l)] = p; }

  // Clamp tiny negative / >1 excursions and verify normalization.
  void finalize(double sum_tol = 1e-10);

 private:
  std::size_t index(int a, int b) const;
  std::size_t cell(int k, int l) const;

  int d_;
  std::array<std::vector<double>, 4> tables_;
};

qmath::ComplexVector alice_eigenvector(int d, int a, int k, const PhaseOffsets& offsets = {});
qmath::ComplexVector bob_eigenvector(int d, int b, int l, const PhaseOffsets& offsets = {});

// Born-rule table for an arbitrary density matrix:
//   P[a,b,k,l] = Tr[(Pi_k^{A_a} (x) Pi_l^{B_b}) rho],
// evaluated as quadratic forms (no d^2 x d^2 projectors are materialized).
// Throws NumericalConsistencyError if any probability's imaginary residue
// exceeds 1e-9.
JointProbabilityTable joint_probability_table(const states::DensityMatrix& rho,
                                              const PhaseOffsets& offsets = {});

// Same table for a pure state via amplitudes; identical results, much cheaper.
JointProbabilityTable joint_probability_table(const states::StateVector& psi,
                                              const PhaseOffsets& offsets = {});

}  // namespace cglmp::measurements
