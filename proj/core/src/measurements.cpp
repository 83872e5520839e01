#include "cglmp/measurements.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cglmp::measurements {

namespace {

constexpr double kImagTol = 1e-9;

int isqrt_dim(std::size_t n) {
  int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (static_cast<std::size_t>(d) * d != n)
    throw std::invalid_argument("state dimension is not a perfect square");
  return d;
}

}  // namespace

double PhaseOffsets::alpha(int a) const {
  if (a == 1) return alpha1;
  if (a == 2) return alpha2;
  throw std::domain_error("setting a must be 1 or 2");
}

double PhaseOffsets::beta(int b) const {
  if (b == 1) return beta1;
  if (b == 2) return beta2;
  throw std::domain_error("setting b must be 1 or 2");
}

bool PhaseOffsets::is_standard(double tol) const {
  return std::abs(alpha1) <= tol && std::abs(alpha2 - 0.5) <= tol &&
         std::abs(beta1 - 0.25) <= tol && std::abs(beta2 + 0.25) <= tol;
}

JointProbabilityTable::JointProbabilityTable(int d) : d_(d) {
  if (d < 2) throw std::domain_error("JointProbabilityTable: d must be >= 2");
  for (auto& t : tables_) t.assign(static_cast<std::size_t>(d) * d, 0.0);
}

std::size_t JointProbabilityTable::index(int a, int b) const {
  if (a < 1 || a > 2 || b < 1 || b > 2) throw std::domain_error("settings must be 1 or 2");
  return static_cast<std::size_t>(a - 1) * 2 + (b - 1);
}

std::size_t JointProbabilityTable::cell(int k, int l) const {
  if (k < 0 || k >= d_ || l < 0 || l >= d_) throw std::domain_error("outcome out of range");
  return static_cast<std::size_t>(k) * d_ + l;
}

void JointProbabilityTable::finalize(double sum_tol) {
  for (auto& t : tables_) {
    double sum = 0.0;
    for (double& p : t) {
      if (p < -1e-12 || p > 1.0 + 1e-12)
        throw NumericalConsistencyError("probability outside [0,1] beyond tolerance");
      p = std::min(std::max(p, 0.0), 1.0);
      sum += p;
    }
    if (std::abs(sum - 1.0) > sum_tol)
      throw NumericalConsistencyError("probability table does not sum to 1");
  }
}

qmath::ComplexVector alice_eigenvector(int d, int a, int k, const PhaseOffsets& offsets) {
  if (d < 2) throw std::domain_error("alice_eigenvector: d must be >= 2");
  if (k < 0 || k >= d) throw std::domain_error("alice_eigenvector: outcome out of range");
  const double phase = 2.0 * std::numbers::pi / d * (k + offsets.alpha(a));
  qmath::ComplexVector v(static_cast<std::size_t>(d));
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) v[j] = std::polar(amp, phase * j);
  return v;
}

qmath::ComplexVector bob_eigenvector(int d, int b, int l, const PhaseOffsets& offsets) {
  if (d < 2) throw std::domain_error("bob_eigenvector: d must be >= 2");
  if (l < 0 || l >= d) throw std::domain_error("bob_eigenvector: outcome out of range");
  const double phase = 2.0 * std::numbers::pi / d * (-l + offsets.beta(b));
  qmath::ComplexVector v(static_cast<std::size_t>(d));
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) v[j] = std::polar(amp, phase * j);
  return v;
}

JointProbabilityTable joint_probability_table(const states::DensityMatrix& rho,
                                              const PhaseOffsets& offsets) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("rho must be square");
  const int d = isqrt_dim(rho.rows());
  JointProbabilityTable table(d);

  // P = <v_a (x) v_b| rho |v_a (x) v_b>. Contracting Alice's vector first
  // leaves a d x d matrix M_ak with M[j,j'] = sum_{m,m'} conj(va_m)
  // rho[(m,j),(m',j')] va_{m'}; each Bob outcome is then <vb|M|vb>.
  for (int a = 1; a <= 2; ++a) {
    for (int k = 0; k < d; ++k) {
      const auto va = alice_eigenvector(d, a, k, offsets);
      qmath::ComplexMatrix m(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j)
        for (int jp = 0; jp < d; ++jp) {
          qmath::Complex sum = 0.0;
          for (int mm = 0; mm < d; ++mm) {
            const std::size_t row = static_cast<std::size_t>(mm) * d + j;
            qmath::Complex inner = 0.0;
            for (int mp = 0; mp < d; ++mp)
              inner += rho(row, static_cast<std::size_t>(mp) * d + jp) * va[mp];
            sum += std::conj(va[mm]) * inner;
          }
          m(j, jp) = sum;
        }
      for (int b = 1; b <= 2; ++b)
        for (int l = 0; l < d; ++l) {
          const auto vb = bob_eigenvector(d, b, l, offsets);
          const qmath::Complex p = qmath::expectation(vb, m);
          if (std::abs(p.imag()) > kImagTol)
            throw NumericalConsistencyError("joint probability has imaginary residue > 1e-9");
          table.set(a, b, k, l, p.real());
        }
    }
  }
  table.finalize();
  return table;
}

JointProbabilityTable joint_probability_table(const states::StateVector& psi,
                                              const PhaseOffsets& offsets) {
  const int d = isqrt_dim(psi.dim());
  JointProbabilityTable table(d);
  for (int a = 1; a <= 2; ++a)
    for (int k = 0; k < d; ++k) {
      const auto va = alice_eigenvector(d, a, k, offsets);
      for (int b = 1; b <= 2; ++b)
        for (int l = 0; l < d; ++l) {
          const auto vb = bob_eigenvector(d, b, l, offsets);
          qmath::Complex amp = 0.0;
          for (int mm = 0; mm < d; ++mm)
            for (int j = 0; j < d; ++j)
              amp += std::conj(va[mm] * vb[j]) * psi[static_cast<std::size_t>(mm) * d + j];
          table.set(a, b, k, l, std::norm(amp));
        }
    }
  table.finalize();
  return table;
}

}  // namespace cglmp::measurements
