// Bell functionals over joint probability tables.
//
// The CGLMP functional aggregates outcome-difference probabilities
//   P(X = Y + k) = sum_j P(X = j + k mod d, Y = j)
// into the signed combination with weights (1 - 2k/(d-1)); both CGLMP and
// CHSH share the local bound 2. For d = 2 the CGLMP combination coincides
// with a CHSH expression, which chsh_value reproduces exactly.

#pragma once

#include "cglmp/measurements.hpp"
#include "cglmp/states.hpp"

namespace cglmp::bell {

inline constexpr double kLocalBound = 2.0;

struct BellValue {
  double value = 0.0;
  double local_bound = kLocalBound;

  bool violated() const { return value > local_bound; }
};

// Which side of P(X = Y + k) is shifted. AEqualsBPlusK aggregates
// sum_j P(A = j + k mod d, B = j); BEqualsAPlusK the transpose relation.
enum class AggregateOrder { AEqualsBPlusK, BEqualsAPlusK };

// Negative k is reduced with a mathematical mod into {0..d-1}.
double aggregate(const measurements::JointProbabilityTable& table, int a, int b, int k,
                 AggregateOrder order);

// Signed CGLMP combination; reduces to the single k = 0 block for d = 2.
BellValue cglmp_value(const measurements::JointProbabilityTable& table);

// CHSH from a d = 2 table with outcomes mapped 0 -> +1, 1 -> -1. Uses the
// correlator combination E11 + E12 - E21 + E22, the one the CGLMP functional
// reduces to at d = 2 (the default Bob phases put the minus on E21).
// Throws std::domain_error for d != 2.
BellValue chsh_value(const measurements::JointProbabilityTable& table);

// Measurement-optimized CHSH value of a two-qubit state: 2 sqrt(m1 + m2)
// where m1, m2 are the two largest eigenvalues of T^T T and T is the Pauli
// correlation matrix. This is the value the local-filtering analysis quotes
// for d = 2, where the filtered state's optimal settings leave the equator.
double chsh_optimal(const states::DensityMatrix& rho);

// Closed-form optimal CGLMP value at q = 1 for the maximally entangled state:
//   (4/d^2) sum_k (1 - 2k/(d-1)) (s_k - s_{-(k+1)}),
//   s_c = 1 / (2 sin^2(pi (c + 1/4)/d)).
// Agrees with the brute-force pipeline to 1e-10 for all tested d.
double cglmp_closed_form_optimal(int d);

// 2 / cglmp_closed_form_optimal(d): the mixing-parameter bound below which
// the unfiltered maximally entangled mixture violates no CGLMP inequality.
double unfiltered_threshold(int d);

}  // namespace cglmp::bell
