#include <doctest.h>

#include <cmath>
#include <random>

#include "cglmp/states.hpp"
#include "test_helpers.hpp"

using namespace cglmp;
using states::SchmidtCoefficients;

TEST_SUITE("states") {

TEST_CASE("max_entangled") {
  const auto psi2 = states::max_entangled(2);
  CHECK(psi2[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(psi2[3].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(psi2[1]) == 0.0);
  CHECK(std::abs(psi2[2]) == 0.0);

  const auto psi3 = states::max_entangled(3);
  for (std::size_t i : {0u, 4u, 8u}) CHECK(psi3[i].real() == doctest::Approx(1.0 / std::sqrt(3.0)));

  CHECK(states::max_entangled(10).norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS((void)states::max_entangled(1), std::domain_error);
}

TEST_CASE("schmidt_state") {
  const SchmidtCoefficients paper(testing::published_gammas(3));
  const auto psi = states::schmidt_state(paper);
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
  // supported only on the |jj> diagonal
  for (std::size_t i = 0; i < 9; ++i)
    if (i != 0 && i != 4 && i != 8) CHECK(std::abs(psi[i]) == 0.0);

  const auto product = states::schmidt_state(SchmidtCoefficients({1.0, 0.0, 0.0}));
  CHECK(product[0].real() == doctest::Approx(1.0));

  const auto uniform = states::schmidt_state(SchmidtCoefficients::uniform(4));
  const auto maxent = states::max_entangled(4);
  for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(uniform[i] - maxent[i]) <= 1e-15);

  CHECK_THROWS_AS(SchmidtCoefficients({0.9, 0.9}), std::invalid_argument);
  CHECK_THROWS_AS(SchmidtCoefficients({-1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("mixed_state at q = 1 is the pure projector") {
  const auto psi = states::max_entangled(2);
  const auto rho = states::mixed_state(2, 1.0);
  CHECK(rho.max_abs_diff(qmath::outer(psi, psi)) <= 1e-15);
}

TEST_CASE("mixed_state entries at d = 2, q = 0.5") {
  const auto rho = states::mixed_state(2, 0.5);
  CHECK(rho(0, 0).real() == doctest::Approx(0.5));    // q/2 + (1-q)/2
  CHECK(rho(0, 3).real() == doctest::Approx(0.25));   // q/2
  CHECK(rho(3, 3).real() == doctest::Approx(0.25));
  CHECK(rho(1, 1).real() == doctest::Approx(0.25));   // |01><01| noise slot
  CHECK(std::abs(rho(2, 2)) == 0.0);                  // no noise on |10>
}

TEST_CASE("mixed_state trace, hermiticity, positivity") {
  const auto rho = states::mixed_state(7, 0.3);
  CHECK(qmath::trace(rho).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rho.is_hermitian());

  std::mt19937_64 rng(23);
  const auto rho3 = states::mixed_state(3, 0.4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto v = testing::random_vector(9, rng);
    CHECK(qmath::expectation(v, rho3).real() >= -1e-10);
  }
}

TEST_CASE("mixed_state is linear in q") {
  const auto pure = states::mixed_state(4, 1.0);
  const auto noise = states::color_noise(4);
  for (double q : {0.2, 0.55, 0.9}) {
    auto expected = pure;
    expected *= q;
    auto scaled_noise = noise;
    scaled_noise *= (1.0 - q);
    expected += scaled_noise;
    CHECK(states::mixed_state(4, q).max_abs_diff(expected) <= 1e-15);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((void)states::mixed_state(3, 0.0), std::domain_error);
  CHECK_THROWS_AS((void)states::mixed_state(3, 1.2), std::domain_error);
  CHECK_THROWS_AS(states::MixedStateParams(3, 0.5, states::max_entangled(2)),
                  std::invalid_argument);
  auto unnormalized = states::max_entangled(2);
  unnormalized[0] *= 2.0;
  CHECK_THROWS_AS(states::MixedStateParams(2, 0.5, unnormalized), std::invalid_argument);
}

}  // TEST_SUITE
