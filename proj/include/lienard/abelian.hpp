#pragma once

#include <vector>

#include "lienard/exec.hpp"
#include "lienard/polynomial.hpp"
#include "lienard/potential.hpp"

namespace lienard {

/// −2 ∫ₐᵇ F′(x) √(2(h − G(x))) dx on a stretch of the level curve H = h.
///
/// With a, b the turning points this is ∮ F dy over the clockwise orbit,
/// after integrating by parts so the integrand vanishes like a square root
/// at the ends. The substitution x = (a+b)/2 − (b−a)/2·cos θ turns that
/// vanishing into a smooth factor, and Gauss–Legendre in θ is doubled from
/// 16 to 4096 points until two successive sums agree. Throws DomainError when
/// the last two sums still differ by more than 1e-9 of the integrand's L1
/// mass.
double orbit_integral(const Polynomial& dF, const Potential& P, double h, double a, double b);

/// I_j(h) = ∮ x^{2j+1} dy along the orbit of annulus A at energy h.
double abelian_integral(const Potential& P, const PeriodAnnulus& A, int j, double h);

/// M(h) = ∮ F dy along the orbit of annulus A at energy h.
double melnikov(const Polynomial& F, const Potential& P, const PeriodAnnulus& A, double h);

struct MelnikovZero {
  double h = 0.0;
  double h_lo = 0.0;  ///< bracketing grid points with opposite signs of M
  double h_hi = 0.0;
};

struct MelnikovProfile {
  PeriodAnnulus annulus;
  std::vector<double> h_grid;
  std::vector<double> values;
  std::vector<MelnikovZero> zeros;  ///< sign changes only (odd multiplicity)
};

/// Samples M over [h_lo, h_hi] and locates its sign changes.
///
/// The grid is geometric when h_lo > 0 and h_hi/h_lo > 100, linear otherwise.
/// Intervals without a sign change where |M| dips below 1e-3·max|M| get a
/// midpoint inserted (up to three passes) so close pairs of zeros are not
/// stepped over. Each sign change is refined by a bracketing solver to
/// |Δh| ≤ 1e-8 of the window scale.
MelnikovProfile profile(const Polynomial& F, const Potential& P, const PeriodAnnulus& A, double h_lo,
                        double h_hi, int n_points, Exec exec = Exec::parallel);

/// Least-squares slope of log|I_j| against log h over 24 geometric samples.
double fit_growth_exponent(const Potential& P, const PeriodAnnulus& A, int j, double h_lo, double h_hi,
                           Exec exec = Exec::parallel);

/// |I_{j+1}/I_j|(h2) > |I_{j+1}/I_j|(h1).
bool check_ratio_growth(const Potential& P, const PeriodAnnulus& A, int j, double h1, double h2);

/// Σ_{j=0}^{q} b_j x^{2j+1}.
Polynomial odd_perturbation(const std::vector<double>& b);

}  // namespace lienard
