#include <doctest.h>

#include <random>

#include "cglmp/qmath.hpp"
#include "cglmp/states.hpp"
#include "test_helpers.hpp"

using namespace cglmp;
using qmath::Complex;
using qmath::ComplexMatrix;
using qmath::ComplexVector;

TEST_SUITE("qmath") {

TEST_CASE("kron of identities") {
  const auto i4 = qmath::kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2));
  CHECK(i4.max_abs_diff(ComplexMatrix::identity(4)) == 0.0);
}

TEST_CASE("kron permutes basis pairs") {
  ComplexMatrix x(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  const auto m = qmath::kron(x, ComplexMatrix::identity(2));
  // (X (x) I)|0b> = |1b>
  for (int b = 0; b < 2; ++b) {
    CHECK(m(2 + b, b).real() == doctest::Approx(1.0));
    CHECK(m(b, 2 + b).real() == doctest::Approx(1.0));
  }
  CHECK(qmath::trace(m).real() == doctest::Approx(0.0));
}

TEST_CASE("kron of the two-qubit filters is the expected diagonal") {
  const auto fa = ComplexMatrix::diagonal(std::vector<double>{0.5, 1.0});
  const auto fb = ComplexMatrix::diagonal(std::vector<double>{0.25, 1.0});
  const auto k = qmath::kron(fa, fb);
  const auto expected = ComplexMatrix::diagonal(std::vector<double>{0.125, 0.5, 0.25, 1.0});
  CHECK(k.max_abs_diff(expected) <= 1e-15);
}

TEST_CASE("kron is associative and respects trace factorization") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = testing::random_matrix(2, 2, rng);
    const auto b = testing::random_matrix(3, 3, rng);
    const auto c = testing::random_matrix(2, 2, rng);
    const auto left = qmath::kron(qmath::kron(a, b), c);
    const auto right = qmath::kron(a, qmath::kron(b, c));
    CHECK(left.max_abs_diff(right) <= 1e-12);
    const auto tk = qmath::trace(qmath::kron(a, b));
    const auto tt = qmath::trace(a) * qmath::trace(b);
    CHECK(std::abs(tk - tt) <= 1e-12);
  }
}

TEST_CASE("kron is bilinear") {
  std::mt19937_64 rng(11);
  const auto a = testing::random_matrix(2, 2, rng);
  const auto b = testing::random_matrix(3, 3, rng);
  auto a2 = a;
  a2 *= Complex{2.5, -1.0};
  auto lhs = qmath::kron(a2, b);
  auto rhs = qmath::kron(a, b);
  rhs *= Complex{2.5, -1.0};
  CHECK(lhs.max_abs_diff(rhs) <= 1e-12);
}

TEST_CASE("dagger basics") {
  CHECK(qmath::dagger(ComplexMatrix::identity(3)).max_abs_diff(ComplexMatrix::identity(3)) == 0.0);

  const auto d = ComplexMatrix::diagonal(std::vector<Complex>{Complex{0.0, 1.0}, Complex{1.0, 0.0}});
  const auto dd = qmath::dagger(d);
  CHECK(dd(0, 0) == Complex{0.0, -1.0});
  CHECK(dd(1, 1) == Complex{1.0, 0.0});

  std::mt19937_64 rng(3);
  const auto m = testing::random_matrix(4, 3, rng);
  CHECK(qmath::dagger(qmath::dagger(m)).max_abs_diff(m) == 0.0);
}

TEST_CASE("dagger reverses products") {
  std::mt19937_64 rng(5);
  const auto a = testing::random_matrix(3, 4, rng);
  const auto b = testing::random_matrix(4, 2, rng);
  const auto lhs = qmath::dagger(a * b);
  const auto rhs = qmath::dagger(b) * qmath::dagger(a);
  CHECK(lhs.max_abs_diff(rhs) <= 1e-12);
}

TEST_CASE("trace") {
  CHECK(qmath::trace(ComplexMatrix::identity(7)).real() == doctest::Approx(7.0));
  std::mt19937_64 rng(9);
  const auto v = testing::random_vector(5, rng);
  const auto t = qmath::trace(qmath::outer(v, v));
  CHECK(t.real() == doctest::Approx(v.norm() * v.norm()));
  CHECK(std::abs(t.imag()) <= 1e-12);

  CHECK(qmath::trace(states::mixed_state(3, 0.5)).real() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS((void)qmath::trace(ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("outer products") {
  const auto e0 = ComplexVector::basis(3, 0);
  const auto p = qmath::outer(e0, e0);
  CHECK(p(0, 0) == Complex{1.0, 0.0});
  CHECK(std::abs(p(1, 1)) == 0.0);

  const auto psi = states::max_entangled(2);
  const auto proj = qmath::outer(psi, psi);
  CHECK(proj(0, 0).real() == doctest::Approx(0.5));
  CHECK(proj(0, 3).real() == doctest::Approx(0.5));
  CHECK(proj(3, 0).real() == doctest::Approx(0.5));
  CHECK(proj(3, 3).real() == doctest::Approx(0.5));
  CHECK(std::abs(proj(1, 1)) == 0.0);

  std::mt19937_64 rng(13);
  const auto v = testing::random_vector(4, rng);
  const auto w = testing::random_vector(4, rng);
  // Tr|v><w| = <w|v>
  CHECK(std::abs(qmath::trace(qmath::outer(v, w)) - w.dot(v)) <= 1e-12);
}

TEST_CASE("expectation agrees with explicit matrix-vector algebra") {
  std::mt19937_64 rng(17);
  const auto m = testing::random_matrix(6, 6, rng);
  const auto v = testing::random_vector(6, rng);
  const auto direct = qmath::expectation(v, m);
  const auto via_ops = v.dot(m * v);
  CHECK(std::abs(direct - via_ops) <= 1e-12);
}

TEST_CASE("vector basics and error paths") {
  CHECK(ComplexVector::basis(4, 2).norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)ComplexVector::basis(3, 3), std::invalid_argument);
  CHECK_THROWS_AS((void)ComplexVector(2).normalized(), std::domain_error);
  CHECK_THROWS_AS((void)(ComplexMatrix(2, 3) * ComplexMatrix(2, 3)), std::invalid_argument);
  const auto psi = states::max_entangled(3);
  CHECK(psi.normalized().norm() == doctest::Approx(1.0));
}

TEST_CASE("hermiticity detection") {
  std::mt19937_64 rng(19);
  auto rho = testing::random_density_matrix(4, rng);
  CHECK(rho.is_hermitian());
  rho(0, 1) += Complex{0.0, 1e-6};
  CHECK_FALSE(rho.is_hermitian());
}

}  // TEST_SUITE
