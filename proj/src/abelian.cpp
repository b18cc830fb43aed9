#include "lienard/abelian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "lienard/error.hpp"
#include "lienard/quadrature.hpp"

namespace lienard {

namespace {

struct QuadratureSum {
  double value = 0.0;
  double l1 = 0.0;
};

QuadratureSum gauss_sum(const Polynomial& dF, const Polynomial& G, double h, double a, double b, int n) {
  const GaussRule& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  QuadratureSum s;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double theta = 0.5 * std::numbers::pi * (rule.nodes[i] + 1.0);
    const double x = mid - half * std::cos(theta);
    const double kinetic = std::max(0.0, 2.0 * (h - G(x)));
    const double f = dF(x) * std::sqrt(kinetic) * half * std::sin(theta);
    const double w = 0.5 * std::numbers::pi * rule.weights[i];
    s.value += w * f;
    s.l1 += w * std::abs(f);
  }
  s.value *= -2.0;
  s.l1 *= 2.0;
  return s;
}

std::vector<double> make_grid(double lo, double hi, int n) {
  std::vector<double> grid(static_cast<std::size_t>(n));
  const bool geometric = lo > 0.0 && hi / lo > 100.0;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    grid[static_cast<std::size_t>(i)] = geometric ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

double orbit_integral(const Polynomial& dF, const Potential& P, double h, double a, double b) {
  if (dF.is_zero() || a == b) return 0.0;
  QuadratureSum prev = gauss_sum(dF, P.G, h, a, b, kMinGaussPoints);
  for (int n = 2 * kMinGaussPoints; n <= kMaxGaussPoints; n *= 2) {
    const QuadratureSum cur = gauss_sum(dF, P.G, h, a, b, n);
    const double diff = std::abs(cur.value - prev.value);
    if (diff <= 1e-13 * (1.0 + cur.l1)) return cur.value;
    if (n == kMaxGaussPoints) {
      if (diff <= 1e-9 * (1.0 + cur.l1)) return cur.value;
      throw DomainError("quadrature non-convergence at h = " + std::to_string(h));
    }
    prev = cur;
  }
  return prev.value;
}

double melnikov(const Polynomial& F, const Potential& P, const PeriodAnnulus& A, double h) {
  const auto [a, b] = turning_points(P, A, h);
  return orbit_integral(differentiate(F), P, h, a, b);
}

double abelian_integral(const Potential& P, const PeriodAnnulus& A, int j, double h) {
  if (j < 0) throw DomainError("abelian_integral: j must be non-negative");
  return melnikov(Polynomial::monomial(2 * j + 1), P, A, h);
}

Polynomial odd_perturbation(const std::vector<double>& b) {
  Polynomial out;
  for (std::size_t j = 0; j < b.size(); ++j) out += Polynomial::monomial(static_cast<int>(2 * j + 1), b[j]);
  return out;
}

MelnikovProfile profile(const Polynomial& F, const Potential& P, const PeriodAnnulus& A, double h_lo,
                        double h_hi, int n_points, Exec exec) {
  if (n_points < 8) throw DomainError("profile: need at least 8 points");
  if (!(h_lo < h_hi)) throw DomainError("profile: empty energy window");
  if (!energy_inside(A, h_lo) || !energy_inside(A, h_hi)) throw DomainError("energy out of annulus");

  MelnikovProfile out;
  out.annulus = A;
  out.h_grid = make_grid(h_lo, h_hi, n_points);
  out.values.resize(out.h_grid.size());
  for_each_index(out.h_grid.size(), exec, [&](std::size_t i) { out.values[i] = melnikov(F, P, A, out.h_grid[i]); });

  double peak = 0.0;
  for (double v : out.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return out;

  for (int pass = 0; pass < 3; ++pass) {
    std::vector<double> inserted;
    for (std::size_t i = 0; i + 1 < out.h_grid.size(); ++i) {
      const double v0 = out.values[i], v1 = out.values[i + 1];
      if (sign_of(v0) * sign_of(v1) < 0) continue;
      if (std::min(std::abs(v0), std::abs(v1)) < 1e-3 * peak)
        inserted.push_back(0.5 * (out.h_grid[i] + out.h_grid[i + 1]));
    }
    if (inserted.empty()) break;
    std::vector<double> fresh(inserted.size());
    for_each_index(inserted.size(), exec, [&](std::size_t i) { fresh[i] = melnikov(F, P, A, inserted[i]); });
    std::vector<double> grid, values;
    std::size_t k = 0;
    for (std::size_t i = 0; i < out.h_grid.size(); ++i) {
      grid.push_back(out.h_grid[i]);
      values.push_back(out.values[i]);
      if (k < inserted.size() && i + 1 < out.h_grid.size() && inserted[k] < out.h_grid[i + 1]) {
        grid.push_back(inserted[k]);
        values.push_back(fresh[k]);
        ++k;
      }
    }
    out.h_grid = std::move(grid);
    out.values = std::move(values);
  }

  const double scale = std::max(std::abs(h_lo), std::abs(h_hi));
  std::vector<std::size_t> brackets;
  for (std::size_t i = 0; i + 1 < out.h_grid.size(); ++i) {
    const double v0 = out.values[i], v1 = out.values[i + 1];
    if (sign_of(v0) * sign_of(v1) < 0) {
      brackets.push_back(i);
    } else if (v1 == 0.0 && i + 2 < out.h_grid.size() && sign_of(v0) * sign_of(out.values[i + 2]) < 0) {
      out.zeros.push_back({out.h_grid[i + 1], out.h_grid[i], out.h_grid[i + 2]});
    }
  }
  std::vector<MelnikovZero> refined(brackets.size());
  for_each_index(brackets.size(), exec, [&](std::size_t k) {
    const std::size_t i = brackets[k];
    const double lo = out.h_grid[i], hi = out.h_grid[i + 1];
    auto f = [&](double h) { return melnikov(F, P, A, h); };
    auto done = [&](double l, double r) { return std::abs(r - l) <= 1e-8 * scale; };
    std::uintmax_t iters = 20;
    const auto root = boost::math::tools::toms748_solve(f, lo, hi, out.values[i], out.values[i + 1], done, iters);
    refined[k] = {0.5 * (root.first + root.second), lo, hi};
  });
  out.zeros.insert(out.zeros.end(), refined.begin(), refined.end());
  std::sort(out.zeros.begin(), out.zeros.end(), [](const auto& a, const auto& b) { return a.h < b.h; });
  return out;
}

double fit_growth_exponent(const Potential& P, const PeriodAnnulus& A, int j, double h_lo, double h_hi,
                           Exec exec) {
  if (!P.coercive || A.kind != AnnulusKind::outer)
    throw DomainError("fit_growth_exponent: needs the outer annulus of a coercive potential");
  double top = 0.0;
  for (const auto& c : P.critical) top = std::max(top, c.energy);
  if (!(h_lo > top) || h_hi < 999.999 * h_lo)
    throw DomainError("fit_growth_exponent: window must span three decades above the critical energies");

  constexpr int kSamples = 24;
  std::vector<double> lx(kSamples), ly(kSamples);
  for_each_index(kSamples, exec, [&](std::size_t i) {
    const double h = h_lo * std::pow(h_hi / h_lo, static_cast<double>(i) / (kSamples - 1));
    lx[i] = std::log(h);
    ly[i] = std::log(std::abs(abelian_integral(P, A, j, h)));
  });
  double mx = 0, my = 0;
  for (int i = 0; i < kSamples; ++i) {
    mx += lx[static_cast<std::size_t>(i)];
    my += ly[static_cast<std::size_t>(i)];
  }
  mx /= kSamples;
  my /= kSamples;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < kSamples; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

bool check_ratio_growth(const Potential& P, const PeriodAnnulus& A, int j, double h1, double h2) {
  if (A.kind != AnnulusKind::outer) throw DomainError("check_ratio_growth: needs the outer annulus");
  double top = 0.0;
  for (const auto& c : P.critical) top = std::max(top, std::abs(c.energy));
  if (h1 < 10.0 * top || h2 < 10.0 * top)
    throw DomainError("check_ratio_growth: energies must exceed 10x the critical energies");
  auto ratio = [&](double h) {
    const double base = abelian_integral(P, A, j, h);
    if (std::abs(base) < 1e-12) throw DomainError("check_ratio_growth: I_j vanishes");
    return std::abs(abelian_integral(P, A, j + 1, h) / base);
  };
  return ratio(h2) > ratio(h1);
}

}  // namespace lienard
