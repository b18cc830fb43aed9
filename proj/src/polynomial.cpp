#include "lienard/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lienard/error.hpp"

namespace lienard {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// A value indistinguishable from zero given the rounding in evaluate() and
// the resolution of x itself.
bool vanishes_at(const Polynomial& p, double x, double value) {
  const double reach = std::abs(x) + 4.0 * kEps * std::max(1.0, std::abs(x));
  return std::abs(value) <= 64.0 * kEps * magnitude_at(p, reach);
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { normalize(); }

Polynomial Polynomial::constant(double c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(int degree, double c) {
  std::vector<double> v(static_cast<std::size_t>(degree) + 1, 0.0);
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

std::optional<int> Polynomial::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return static_cast<int>(coeffs_.size()) - 1;
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool Polynomial::is_even() const {
  for (std::size_t i = 1; i < coeffs_.size(); i += 2)
    if (coeffs_[i] != 0.0) return false;
  return true;
}

bool Polynomial::is_odd() const {
  for (std::size_t i = 0; i < coeffs_.size(); i += 2)
    if (coeffs_[i] != 0.0) return false;
  return true;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  normalize();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(out));
}

double evaluate(const Polynomial& p, double x) { return p(x); }

double magnitude_at(const Polynomial& p, double x) {
  const double ax = std::abs(x);
  double acc = 0.0;
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * ax + std::abs(*it);
  return acc;
}

Polynomial differentiate(const Polynomial& p) {
  const auto& c = p.coeffs();
  if (c.size() <= 1) return {};
  std::vector<double> out(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) out[i - 1] = static_cast<double>(i) * c[i];
  return Polynomial(std::move(out));
}

Polynomial antiderivative(const Polynomial& p) {
  const auto& c = p.coeffs();
  if (c.empty()) return {};
  std::vector<double> out(c.size() + 1, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) out[i + 1] = c[i] / static_cast<double>(i + 1);
  return Polynomial(std::move(out));
}

Polynomial compose_square_shift(const Polynomial& p, double x0) {
  const Polynomial u({x0, 0.0, 1.0});
  Polynomial acc;
  const auto& c = p.coeffs();
  // Horner in the polynomial ring; the constant term follows exactly the same
  // arithmetic as evaluate(p, x0).
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + Polynomial::constant(*it);
  return acc;
}

double root_bound(const Polynomial& p) {
  const auto& c = p.coeffs();
  if (c.size() <= 1) return 1.0;
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) m = std::max(m, std::abs(c[i] / c.back()));
  return 1.0 + m;
}

double bisect_root(const Polynomial& p, double lo, double hi) {
  double flo = p(lo);
  if (flo == 0.0) return lo;
  if (p(hi) == 0.0) return hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if (sign_of(fm) == sign_of(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<RealRoot> real_roots(const Polynomial& p, double lo, double hi) {
  if (p.is_zero()) throw DomainError("indeterminate roots");
  if (!(lo < hi)) throw DomainError("real_roots: empty interval");
  const int deg = *p.degree();
  std::vector<RealRoot> roots;
  if (deg == 0) return roots;
  if (deg == 1) {
    const double r = -p.coeff(0) / p.coeff(1);
    if (r >= lo && r <= hi) roots.push_back({r, true});
    return roots;
  }

  // p is monotone between consecutive breakpoints.
  std::vector<double> breaks{lo};
  for (const auto& c : real_roots(differentiate(p), lo, hi))
    if (c.x > breaks.back() && c.x < hi) breaks.push_back(c.x);
  breaks.push_back(hi);

  std::vector<double> values(breaks.size());
  std::vector<bool> zero(breaks.size());
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    values[i] = p(breaks[i]);
    zero[i] = vanishes_at(p, breaks[i], values[i]);
  }

  auto side_sign = [&](double a, double b) { return sign_of(p(0.5 * (a + b))); };

  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (i > 0 && !zero[i - 1] && !zero[i] && sign_of(values[i - 1]) * sign_of(values[i]) < 0)
      roots.push_back({bisect_root(p, breaks[i - 1], breaks[i]), true});
    if (!zero[i]) continue;
    const double x = breaks[i];
    const bool interior_critical = i > 0 && i + 1 < breaks.size();
    bool odd = true;
    if (interior_critical) {
      odd = side_sign(breaks[i - 1], x) * side_sign(x, breaks[i + 1]) < 0;
    } else if (std::abs(differentiate(p)(x)) <= 64.0 * kEps * magnitude_at(differentiate(p), x)) {
      const double step = 1e-6 * std::max(1.0, std::abs(x));
      odd = sign_of(p(x - step)) * sign_of(p(x + step)) < 0;
    }
    roots.push_back({x, odd});
  }
  std::sort(roots.begin(), roots.end(), [](const RealRoot& a, const RealRoot& b) { return a.x < b.x; });
  return roots;
}

}  // namespace lienard
