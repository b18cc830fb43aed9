#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lienard/polynomial.hpp"

namespace lienard {

enum class CriticalKind { min, max, inflection };

struct CriticalPoint {
  double x = 0.0;
  double energy = 0.0;
  CriticalKind kind = CriticalKind::min;
};

/// G(x) = ∫₀ˣ g, the potential of the Hamiltonian H(x, y) = y²/2 + G(x).
struct Potential {
  Polynomial G;
  bool coercive = false;     ///< even degree, positive leading coefficient
  double leading_coeff = 0;  ///< G₀ in G(x) = G₀ x^{2l} (1 + O(1/x))
  int half_degree = 0;       ///< l, with deg G = 2l; 0 when not coercive
  std::vector<CriticalPoint> critical;  ///< ascending in x
};

Potential potential_of(const Polynomial& g);
/// Builds the analysis object from G directly. G(0) must vanish.
Potential potential_from_G(const Polynomial& G);

/// All real critical points of G, ascending in x. Extrema are classified by
/// the first non-vanishing higher derivative; a critical point where that
/// derivative has odd order is an inflection.
std::vector<CriticalPoint> critical_profile(const Potential& P);

enum class AnnulusKind {
  inner,   ///< orbits around a single local minimum
  nested,  ///< orbits around a local maximum and the wells beneath it
  outer,   ///< orbits enclosing every critical point
};

constexpr double kInfiniteEnergy = std::numeric_limits<double>::infinity();

/// A maximal family of closed level curves of H, parameterized by energy.
struct PeriodAnnulus {
  int id = 0;
  double center_x = 0.0;
  double h_min = 0.0;
  double h_max = kInfiniteEnergy;
  AnnulusKind kind = AnnulusKind::inner;
};

std::string to_string(AnnulusKind kind);

/// Period annuli of a coercive potential: one inner annulus per local
/// minimum, one annulus above each local maximum (nested below the global
/// barrier, outer above it), or a single outer annulus for a one-well
/// potential. Inner wells come first in ascending center order, then nested
/// annuli, and the outer annulus is always last.
/// Throws DomainError for non-coercive potentials and for inflection-type
/// critical points.
std::vector<PeriodAnnulus> annuli(const Potential& P);

const PeriodAnnulus& outer_annulus(const std::vector<PeriodAnnulus>& all);
const PeriodAnnulus& outer_annulus(std::vector<PeriodAnnulus>&&) = delete;

/// True when h lies in (h_min, h_max) at least 1e-9 (relative to the energy
/// scale) away from both critical levels.
bool energy_inside(const PeriodAnnulus& A, double h);

/// The two crossings a < center_x < b of the level curve H = h of annulus A
/// with the x-axis. Throws DomainError("energy out of annulus").
std::pair<double, double> turning_points(const Potential& P, const PeriodAnnulus& A, double h);

}  // namespace lienard
