#include "lienard/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lienard/error.hpp"

namespace lienard {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Critical energies closer than this (relative) are treated as one level.
double energy_tolerance(const std::vector<CriticalPoint>& crit) {
  double scale = 1.0;
  for (const auto& c : crit) scale = std::max(scale, std::abs(c.energy));
  return 1e-9 * scale;
}

CriticalKind classify(const Polynomial& G, double x) {
  Polynomial d = differentiate(differentiate(G));
  for (int order = 2; !d.is_zero(); ++order, d = differentiate(d)) {
    const double v = d(x);
    if (std::abs(v) > 1e3 * kEps * magnitude_at(d, x)) {
      if (order % 2 == 1) return CriticalKind::inflection;
      return v > 0 ? CriticalKind::min : CriticalKind::max;
    }
  }
  return CriticalKind::inflection;
}

template <typename F>
double bisect(F&& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Potential potential_from_G(const Polynomial& G) {
  Potential P;
  P.G = G;
  const auto deg = G.degree();
  if (deg && *deg >= 2 && *deg % 2 == 0 && G.leading() > 0) {
    P.coercive = true;
    P.leading_coeff = G.leading();
    P.half_degree = *deg / 2;
  }
  P.critical = critical_profile(P);
  return P;
}

Potential potential_of(const Polynomial& g) { return potential_from_G(antiderivative(g)); }

std::vector<CriticalPoint> critical_profile(const Potential& P) {
  const Polynomial g = differentiate(P.G);
  std::vector<CriticalPoint> out;
  if (g.is_zero() || *g.degree() == 0) return out;
  const double R = root_bound(g);
  for (const auto& r : real_roots(g, -R, R)) {
    CriticalPoint c;
    c.x = r.x;
    c.energy = P.G(r.x);
    c.kind = r.odd ? classify(P.G, r.x) : CriticalKind::inflection;
    out.push_back(c);
  }
  return out;
}

std::string to_string(AnnulusKind kind) {
  switch (kind) {
    case AnnulusKind::inner: return "inner";
    case AnnulusKind::nested: return "nested";
    case AnnulusKind::outer: return "outer";
  }
  return "?";
}

std::vector<PeriodAnnulus> annuli(const Potential& P) {
  if (!P.coercive) throw DomainError("annuli: potential is not coercive");
  const auto& crit = P.critical;
  for (const auto& c : crit)
    if (c.kind == CriticalKind::inflection)
      throw DomainError("annuli: inflection-type critical point at x = " + std::to_string(c.x));

  std::vector<PeriodAnnulus> inner, nested, outer;
  const double tol = energy_tolerance(crit);
  const bool has_max =
      std::any_of(crit.begin(), crit.end(), [](const auto& c) { return c.kind == CriticalKind::max; });
  if (!has_max) {
    // Single well: its annulus is also the outer one.
    outer.push_back({0, crit.front().x, crit.front().energy, kInfiniteEnergy, AnnulusKind::outer});
  }

  for (std::size_t i = 0; has_max && i < crit.size(); ++i) {
    const auto& c = crit[i];
    if (c.kind == CriticalKind::min) {
      double top = kInfiniteEnergy;
      if (i > 0) top = std::min(top, crit[i - 1].energy);
      if (i + 1 < crit.size()) top = std::min(top, crit[i + 1].energy);
      inner.push_back({0, c.x, c.energy, top, AnnulusKind::inner});
      continue;
    }
    // The band above a maximum reaches up to the nearest strictly higher
    // barrier on either side. A level shared with a maximum further left
    // belongs to that maximum's annulus.
    double left_top = kInfiniteEnergy;
    bool duplicate = false;
    for (std::size_t k = i; k-- > 0;) {
      if (crit[k].kind != CriticalKind::max) continue;
      if (crit[k].energy > c.energy + tol) {
        left_top = crit[k].energy;
        break;
      }
      if (crit[k].energy >= c.energy - tol) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    double right_top = kInfiniteEnergy;
    for (std::size_t k = i + 1; k < crit.size(); ++k) {
      if (crit[k].kind == CriticalKind::max && crit[k].energy > c.energy + tol) {
        right_top = crit[k].energy;
        break;
      }
    }
    const double top = std::min(left_top, right_top);
    if (std::isinf(top))
      outer.push_back({0, c.x, c.energy, top, AnnulusKind::outer});
    else
      nested.push_back({0, c.x, c.energy, top, AnnulusKind::nested});
  }

  std::vector<PeriodAnnulus> all;
  for (auto* group : {&inner, &nested, &outer}) all.insert(all.end(), group->begin(), group->end());
  for (std::size_t i = 0; i < all.size(); ++i) all[i].id = static_cast<int>(i);
  return all;
}

const PeriodAnnulus& outer_annulus(const std::vector<PeriodAnnulus>& all) {
  for (const auto& a : all)
    if (a.kind == AnnulusKind::outer) return a;
  throw DomainError("no outer annulus");
}

bool energy_inside(const PeriodAnnulus& A, double h) {
  double scale = std::max(1.0, std::abs(A.h_min));
  if (std::isfinite(A.h_max)) scale = std::max(scale, std::abs(A.h_max));
  const double margin = 1e-9 * scale;
  if (!(h > A.h_min + margin)) return false;
  return !std::isfinite(A.h_max) || h < A.h_max - margin;
}

std::pair<double, double> turning_points(const Potential& P, const PeriodAnnulus& A, double h) {
  if (!energy_inside(A, h)) throw DomainError("energy out of annulus");
  const auto& crit = P.critical;
  std::size_t idx = 0;
  for (std::size_t i = 1; i < crit.size(); ++i)
    if (std::abs(crit[i].x - A.center_x) < std::abs(crit[idx].x - A.center_x)) idx = i;

  const Polynomial shifted = P.G - Polynomial::constant(h);
  const double R = root_bound(shifted);
  auto f = [&](double x) { return shifted(x); };

  // G < h from the center out to the first critical point at or above h;
  // the crossing lies in the monotone stretch just before it.
  double left_lo = -R, left_hi = crit[idx].x;
  for (std::size_t k = idx; k-- > 0;) {
    if (crit[k].energy >= h) {
      left_lo = crit[k].x;
      break;
    }
    left_hi = crit[k].x;
  }
  double right_lo = crit[idx].x, right_hi = R;
  for (std::size_t k = idx + 1; k < crit.size(); ++k) {
    if (crit[k].energy >= h) {
      right_hi = crit[k].x;
      break;
    }
    right_lo = crit[k].x;
  }
  return {bisect(f, left_lo, left_hi), bisect(f, right_lo, right_hi)};
}

}  // namespace lienard
