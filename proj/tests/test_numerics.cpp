#include <doctest.h>

#include <cmath>

#include "cvteleport/numerics.hpp"

using namespace cvt;

TEST_SUITE("numerics") {

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  // An n-point rule is exact through degree 2n - 1.
  const GaussLegendreRule rule = gauss_legendre(8, 0.0, 1.0);
  for (int k = 0; k <= 15; ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      sum += rule.weights[i] * std::pow(rule.nodes[i], k);
    CHECK(sum == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
  }
}

TEST_CASE("gauss-legendre handles a gaussian integrand") {
  const GaussLegendreRule rule = gauss_legendre(48, -8.0, 8.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * std::exp(-rule.nodes[i] * rule.nodes[i]);
  CHECK(sum == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
}

TEST_CASE("legendre recurrence at fixed points") {
  CHECK(legendre_p(0, 3.7) == 1.0);
  CHECK(legendre_p(1, 3.7) == 3.7);
  // P2(x) = (3x^2 - 1) / 2 at x = 2
  CHECK(legendre_p(2, 2.0) == doctest::Approx(5.5).epsilon(1e-15));
  // P3(x) = (5x^3 - 3x) / 2 at x = 1.5
  CHECK(legendre_p(3, 1.5) == doctest::Approx((5 * 3.375 - 4.5) / 2).epsilon(1e-15));
  CHECK(legendre_p(5, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("log binomial") {
  CHECK(std::exp(log_binomial(6, 2)) == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(std::exp(log_binomial(2, 1)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(log_binomial(10, 0) == doctest::Approx(0.0).scale(1.0));
}

}  // TEST_SUITE
