#include "cglmp/bell.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cglmp::bell {

namespace {

int mod_d(int k, int d) {
  int r = k % d;
  return r < 0 ? r + d : r;
}

// Eigenvalues of a symmetric 3x3 matrix, descending, via the trigonometric
// closed form.
std::array<double, 3> symmetric3_eigenvalues(const std::array<std::array<double, 3>, 3>& a) {
  const double p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
  const double tr = a[0][0] + a[1][1] + a[2][2];
  if (p1 < 1e-30) {
    std::array<double, 3> ev = {a[0][0], a[1][1], a[2][2]};
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
  }
  const double q = tr / 3.0;
  const double p2 = (a[0][0] - q) * (a[0][0] - q) + (a[1][1] - q) * (a[1][1] - q) +
                    (a[2][2] - q) * (a[2][2] - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  std::array<std::array<double, 3>, 3> b;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = (a[i][j] - (i == j ? q : 0.0)) / p;
  const double detb = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                      b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                      b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  const double r = std::clamp(detb / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  return {e1, tr - e1 - e3, e3};
}

}  // namespace

double aggregate(const measurements::JointProbabilityTable& table, int a, int b, int k,
                 AggregateOrder order) {
  const int d = table.d();
  const int shift = mod_d(k, d);
  double sum = 0.0;
  for (int j = 0; j < d; ++j) {
    const int shifted = (j + shift) % d;
    sum += order == AggregateOrder::AEqualsBPlusK ? table.at(a, b, shifted, j)
                                                  : table.at(a, b, j, shifted);
  }
  return sum;
}

BellValue cglmp_value(const measurements::JointProbabilityTable& table) {
  const int d = table.d();
  using enum AggregateOrder;
  double total = 0.0;
  for (int k = 0; k < d / 2; ++k) {
    const double w = 1.0 - 2.0 * k / (d - 1);
    const double pos = aggregate(table, 1, 1, k, AEqualsBPlusK) +
                       aggregate(table, 2, 1, k + 1, BEqualsAPlusK) +
                       aggregate(table, 2, 2, k, AEqualsBPlusK) +
                       aggregate(table, 1, 2, k, BEqualsAPlusK);
    const double neg = aggregate(table, 1, 1, -k - 1, AEqualsBPlusK) +
                       aggregate(table, 2, 1, -k, BEqualsAPlusK) +
                       aggregate(table, 2, 2, -k - 1, AEqualsBPlusK) +
                       aggregate(table, 1, 2, -k - 1, BEqualsAPlusK);
    total += w * (pos - neg);
  }
  return BellValue{total};
}

BellValue chsh_value(const measurements::JointProbabilityTable& table) {
  if (table.d() != 2) throw std::domain_error("chsh_value: requires d = 2");
  auto corr = [&table](int a, int b) {
    return table.at(a, b, 0, 0) + table.at(a, b, 1, 1) - table.at(a, b, 0, 1) -
           table.at(a, b, 1, 0);
  };
  return BellValue{corr(1, 1) + corr(1, 2) - corr(2, 1) + corr(2, 2)};
}

double chsh_optimal(const states::DensityMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw std::domain_error("chsh_optimal: requires d = 2");
  using qmath::Complex;
  const Complex i{0.0, 1.0};
  // Pauli correlation matrix T[m][n] = Tr[rho (sigma_m (x) sigma_n)],
  // written out against the 4x4 entries (row index a*2+b).
  auto t = [&rho](const std::array<std::array<Complex, 2>, 2>& sa,
                  const std::array<std::array<Complex, 2>, 2>& sb) {
    Complex sum = 0.0;
    for (int a1 = 0; a1 < 2; ++a1)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int a2 = 0; a2 < 2; ++a2)
          for (int b2 = 0; b2 < 2; ++b2)
            sum += sa[a2][a1] * sb[b2][b1] * rho(static_cast<std::size_t>(a1) * 2 + b1,
                                                 static_cast<std::size_t>(a2) * 2 + b2);
    return sum.real();
  };
  const std::array<std::array<Complex, 2>, 2> sx = {{{0.0, 1.0}, {1.0, 0.0}}};
  const std::array<std::array<Complex, 2>, 2> sy = {{{0.0, -i}, {i, 0.0}}};
  const std::array<std::array<Complex, 2>, 2> sz = {{{1.0, 0.0}, {0.0, -1.0}}};
  const std::array<const std::array<std::array<Complex, 2>, 2>*, 3> paulis = {&sx, &sy, &sz};

  std::array<std::array<double, 3>, 3> tt{};
  std::array<std::array<double, 3>, 3> tmat{};
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) tmat[m][n] = t(*paulis[m], *paulis[n]);
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) {
      double sum = 0.0;
      for (int r = 0; r < 3; ++r) sum += tmat[r][m] * tmat[r][n];
      tt[m][n] = sum;
    }
  const auto ev = symmetric3_eigenvalues(tt);
  return 2.0 * std::sqrt(std::max(ev[0] + ev[1], 0.0));
}

double cglmp_closed_form_optimal(int d) {
  if (d < 2) throw std::domain_error("cglmp_closed_form_optimal: d must be >= 2");
  const double pi = std::numbers::pi;
  auto s = [d, pi](double c) {
    const double x = std::sin(pi * (c + 0.25) / d);
    return 1.0 / (2.0 * x * x);
  };
  double total = 0.0;
  for (int k = 0; k < d / 2; ++k) {
    const double w = 1.0 - 2.0 * k / (d - 1);
    total += w * (s(k) - s(-(k + 1)));
  }
  return 4.0 / (static_cast<double>(d) * d) * total;
}

double unfiltered_threshold(int d) { return kLocalBound / cglmp_closed_form_optimal(d); }

}  // namespace cglmp::bell
