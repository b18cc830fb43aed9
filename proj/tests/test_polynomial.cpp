#include <doctest.h>

#include <cmath>
#include <random>

#include "lienard/error.hpp"
#include "lienard/polynomial.hpp"
#include "lienard/quadrature.hpp"

using namespace lienard;

namespace {

Polynomial random_poly(std::mt19937& rng, int degree) {
  std::uniform_real_distribution<double> c(-3.0, 3.0);
  std::vector<double> coeffs(static_cast<std::size_t>(degree) + 1);
  for (auto& v : coeffs) v = c(rng);
  coeffs.back() = coeffs.back() == 0.0 ? 1.0 : coeffs.back();
  return Polynomial(coeffs);
}

}  // namespace

TEST_SUITE("poly") {
  TEST_CASE("normalization trims trailing zeros and degree of zero is empty") {
    const Polynomial p({1.0, 2.0, 0.0, 0.0});
    CHECK(p.coeffs().size() == 2);
    CHECK(p.degree() == 1);
    CHECK_FALSE(Polynomial({0.0, 0.0}).degree().has_value());
    CHECK(Polynomial().is_zero());
  }

  TEST_CASE("evaluate") {
    const Polynomial vdp({0.0, -1.0, 0.0, 1.0 / 3.0});
    CHECK(evaluate(vdp, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(evaluate(Polynomial(), 5.0) == 0.0);
    const Polynomial dw({0.0, 0.0, -3.5, 0.0, 0.5});
    const double r = std::sqrt(3.5 + std::sqrt(32.25));
    CHECK(evaluate(dw, r) == doctest::Approx(10.0).epsilon(1e-13));
  }

  TEST_CASE("differentiate and antiderivative") {
    const Polynomial dw({0.0, 0.0, -3.5, 0.0, 0.5});
    CHECK(differentiate(dw) == Polynomial({0.0, -7.0, 0.0, 2.0}));
    CHECK(differentiate(Polynomial::constant(4.0)).is_zero());
    CHECK(differentiate(Polynomial::monomial(1)) == Polynomial::constant(1.0));
    CHECK(antiderivative(Polynomial::monomial(1)) == Polynomial({0.0, 0.0, 0.5}));
    CHECK(antiderivative(Polynomial({0.0, -7.0, 0.0, 2.0})) == dw);
    CHECK(antiderivative(Polynomial()).is_zero());
  }

  TEST_CASE("differentiate inverts antiderivative on random polynomials") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      const Polynomial p = random_poly(rng, 1 + trial % 9);
      const Polynomial q = differentiate(antiderivative(p));
      REQUIRE(q.coeffs().size() == p.coeffs().size());
      for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        CHECK(std::abs(q.coeffs()[i] - p.coeffs()[i]) <= 1e-14 * std::abs(p.coeffs()[i]));
    }
  }

  TEST_CASE("compose_square_shift matches the binomial expansion") {
    CHECK(compose_square_shift(Polynomial::monomial(1), -3.5) == Polynomial({-3.5, 0.0, 1.0}));
    CHECK(compose_square_shift(Polynomial::constant(2.5), 9.0) == Polynomial::constant(2.5));
    // (x² − 3.5)³/3 − (x² − 3.5) expanded by hand.
    const double a = -3.5;
    const Polynomial expected({a * a * a / 3.0 - a, 0.0, a * a - 1.0, 0.0, a, 0.0, 1.0 / 3.0});
    const Polynomial got = compose_square_shift(Polynomial({0.0, -1.0, 0.0, 1.0 / 3.0}), a);
    REQUIRE(got.degree() == 6);
    for (std::size_t i = 0; i < 7; ++i) CHECK(got.coeff(i) == doctest::Approx(expected.coeff(i)).epsilon(1e-14));
  }

  TEST_CASE("compose_square_shift agrees with pointwise substitution") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> xs(-3.0, 3.0);
    for (int trial = 0; trial < 40; ++trial) {
      const Polynomial p = random_poly(rng, 1 + trial % 6);
      const double x0 = xs(rng);
      const Polynomial q = compose_square_shift(p, x0);
      CHECK(q.degree() == 2 * *p.degree());
      for (int k = 0; k < 10; ++k) {
        const double x = xs(rng);
        const double want = p(x * x + x0);
        CHECK(std::abs(q(x) - want) <= 1e-12 * magnitude_at(p, x * x + x0) + 1e-300);
      }
    }
  }

  TEST_CASE("real_roots of the shifted quartic") {
    const Polynomial p({-10.0, 0.0, -3.5, 0.0, 0.5});
    const auto roots = real_roots(p, -10.0, 10.0);
    REQUIRE(roots.size() == 2);
    const double r = std::sqrt(3.5 + std::sqrt(12.25 + 20.0));
    CHECK(roots[0].x == doctest::Approx(-r).epsilon(1e-12));
    CHECK(roots[1].x == doctest::Approx(r).epsilon(1e-12));
    CHECK(roots[0].odd);
    CHECK(r == doctest::Approx(3.0296).epsilon(1e-4));
  }

  TEST_CASE("real_roots edge cases") {
    CHECK(real_roots(Polynomial({1.0, 0.0, 1.0}), -10.0, 10.0).empty());
    const auto cube = real_roots(Polynomial::monomial(3), -1.0, 1.0);
    REQUIRE(cube.size() == 1);
    CHECK(std::abs(cube[0].x) < 1e-12);
    CHECK(cube[0].odd);
    const auto square = real_roots(Polynomial({1.0, -2.0, 1.0}), -5.0, 5.0);
    REQUIRE(square.size() == 1);
    CHECK(square[0].x == doctest::Approx(1.0).epsilon(1e-7));
    CHECK_FALSE(square[0].odd);
    CHECK_THROWS_WITH_AS(real_roots(Polynomial(), -1.0, 1.0), "indeterminate roots", DomainError);
  }

  TEST_CASE("real_roots residuals are small and roots ascend") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
      const Polynomial p = random_poly(rng, 2 + trial % 8);
      const double R = root_bound(p);
      const auto roots = real_roots(p, -R, R);
      double maxc = 0.0;
      for (double c : p.coeffs()) maxc = std::max(maxc, std::abs(c));
      for (std::size_t i = 0; i < roots.size(); ++i) {
        CHECK(std::abs(p(roots[i].x)) <= 1e-9 * (1.0 + maxc) * std::max(1.0, magnitude_at(p, roots[i].x)));
        if (i > 0) CHECK(roots[i].x > roots[i - 1].x);
      }
    }
  }

  TEST_CASE("real_roots finds every root of a product of linear factors") {
    Polynomial p = Polynomial::constant(1.0);
    for (double r : {-2.5, -0.5, 0.25, 1.0, 3.0}) p = p * Polynomial({-r, 1.0});
    const auto roots = real_roots(p, -10.0, 10.0);
    REQUIRE(roots.size() == 5);
    CHECK(roots[2].x == doctest::Approx(0.25).epsilon(1e-12));
  }

  TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
    for (int n = kMinGaussPoints; n <= kMaxGaussPoints; n *= 2) {
      const GaussRule& rule = gauss_legendre(n);
      double w = 0.0, x4 = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        w += rule.weights[i];
        x4 += rule.weights[i] * std::pow(rule.nodes[i], 4);
      }
      CHECK(w == doctest::Approx(2.0).epsilon(1e-13));
      CHECK(x4 == doctest::Approx(0.4).epsilon(1e-13));
    }
  }
}
