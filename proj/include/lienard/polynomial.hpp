#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

namespace lienard {

/// Dense univariate real polynomial, coefficients in ascending degree.
///
/// Always stored normalized: the last coefficient is nonzero, and the zero
/// polynomial has no coefficients at all (its degree is std::nullopt).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs);

  static Polynomial constant(double c);
  static Polynomial monomial(int degree, double c = 1.0);

  const std::vector<double>& coeffs() const { return coeffs_; }
  /// Coefficient of x^i, zero past the degree.
  double coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0.0; }
  std::optional<int> degree() const;
  bool is_zero() const { return coeffs_.empty(); }
  double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }

  /// Horner evaluation.
  double operator()(double x) const;

  /// Only even (resp. odd) powers carry nonzero coefficients.
  bool is_even() const;
  bool is_odd() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void normalize();
  std::vector<double> coeffs_;
};

double evaluate(const Polynomial& p, double x);

/// Σ |c_i| |x|^i, the natural scale for rounding error in evaluate(p, x).
double magnitude_at(const Polynomial& p, double x);

Polynomial differentiate(const Polynomial& p);

/// The antiderivative vanishing at x = 0.
Polynomial antiderivative(const Polynomial& p);

/// p(x² + x0). Only even powers of x appear in the result.
Polynomial compose_square_shift(const Polynomial& p, double x0);

/// Cauchy bound: every real root lies in [-R, R].
double root_bound(const Polynomial& p);

struct RealRoot {
  double x = 0.0;
  /// True when p changes sign across x (odd multiplicity).
  bool odd = true;
};

/// Distinct real roots of p in [lo, hi], ascending.
///
/// Roots are bracketed between consecutive critical points of p (found
/// recursively from p') and refined by bisection to machine resolution.
/// A critical point where p vanishes up to rounding is reported as a
/// tangential root and its parity is read off the sign on either side.
/// Throws DomainError("indeterminate roots") for the zero polynomial.
std::vector<RealRoot> real_roots(const Polynomial& p, double lo, double hi);

/// Bisection for a root of p in [lo, hi] where p(lo), p(hi) have opposite
/// signs (or one vanishes).
double bisect_root(const Polynomial& p, double lo, double hi);

}  // namespace lienard
