#pragma once

// Independent reference computations used by the unit and acceptance tests.
// None of them share code paths with the library's quadrature.

#include <cmath>
#include <functional>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lienard/polynomial.hpp"

namespace oracle {

// ∮ x^{2j+1} dy on the circle x = r cos t, y = −r sin t (clockwise), r² = 2h,
// by the periodic trapezoid rule.
inline double harmonic_abelian(int j, double h, int points = 256) {
  const double r = std::sqrt(2.0 * h);
  double sum = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = 2.0 * std::numbers::pi * i / points;
    const double x = r * std::cos(t);
    const double dy = -r * std::cos(t);
    sum += std::pow(x, 2 * j + 1) * dy;
  }
  return sum * 2.0 * std::numbers::pi / points;
}

// Same parameterization for a general F over the harmonic potential.
inline double harmonic_melnikov(const std::function<double(double)>& F, double h, int points = 512) {
  const double r = std::sqrt(2.0 * h);
  double sum = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = 2.0 * std::numbers::pi * i / points;
    sum += F(r * std::cos(t)) * (-r * std::cos(t));
  }
  return sum * 2.0 * std::numbers::pi / points;
}

// Solves G(x) = u by bisection on the monotone stretch between `from` (where
// G(from) ≤ u) and `to` (where G(to) ≥ u).
inline double invert_branch(const lienard::Polynomial& G, double u, double from, double to) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (from + to);
    (G(mid) < u ? from : to) = mid;
  }
  return 0.5 * (from + to);
}

// ∮ F dy = −2∫ F·G′/√(2(h−G)) dx for a single-well orbit around the minimum
// at `center`, written on the two monotone branches with
// u = G_c + (h − G_c) sin²θ so the 1/√ endpoint singularity disappears.
// `left` and `right` must bracket the turning points.
inline double singular_form(const lienard::Polynomial& F, const lienard::Polynomial& G, double center, double h,
                            double left, double right) {
  const double gc = G(center);
  const double span = h - gc;
  auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    const double u = gc + span * s * s;
    const double xr = invert_branch(G, u, center, right);
    const double xl = invert_branch(G, u, center, left);
    return s * (F(xr) - F(xl));
  };
  const double I = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, std::numbers::pi / 2,
                                                                                 15, 1e-13);
  return -2.0 * std::sqrt(2.0 * span) * I;
}

}  // namespace oracle
