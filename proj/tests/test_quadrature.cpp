#include <doctest.h>

#include <cmath>
#include <numeric>

#include "llbar/constants.hpp"
#include "llbar/errors.hpp"
#include "llbar/quadrature.hpp"

using namespace llbar;

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (std::size_t n : {1u, 2u, 5u, 16u, 64u, 256u}) {
    const GaussLegendreRule r = gauss_legendre(n);
    CHECK(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    for (std::size_t deg = 0; deg < 2 * n && deg <= 30; ++deg) {
      const double exact = deg % 2 == 1 ? 0.0 : 2.0 / static_cast<double>(deg + 1);
      const double got = integrate(r, [&](double x) { return std::pow(x, static_cast<double>(deg)); });
      CHECK(std::abs(got - exact) < 1e-13);
    }
  }
  CHECK_THROWS_AS((void)gauss_legendre(0), DomainError);
}

TEST_CASE("nodes are sorted, symmetric and interior") {
  const GaussLegendreRule r = gauss_legendre(33);
  for (std::size_t k = 0; k < r.nodes.size(); ++k) {
    CHECK(std::abs(r.nodes[k]) < 1.0);
    CHECK(std::abs(r.nodes[k] + r.nodes[r.nodes.size() - 1 - k]) < 1e-15);
    if (k > 0) CHECK(r.nodes[k] > r.nodes[k - 1]);
  }
}

TEST_CASE("mapped and composite rules") {
  const GaussLegendreRule r = gauss_legendre(12, 0.0, kPi);
  CHECK(integrate(r, [](double x) { return std::sin(x); }) == doctest::Approx(2.0).epsilon(1e-14));
  const GaussLegendreRule c = composite_gauss_legendre(16, 16, 0.0, kTwoPi);
  CHECK(c.nodes.size() == 256);
  CHECK(integrate(c, [](double x) { return std::cos(3.0 * x) * std::cos(3.0 * x); }) ==
        doctest::Approx(kPi).epsilon(1e-14));
  CHECK(integrate(c, [](double x) { return std::exp(std::cos(x)); }) ==
        doctest::Approx(kTwoPi * std::cyl_bessel_i(0.0, 1.0)).epsilon(1e-14));
}
