#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lienard/constructor.hpp"
#include "lienard/exec.hpp"

namespace lienard {

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  std::int64_t max_steps = 10'000'000;
  double box = 1e6;  ///< |x|, |y| beyond this count as escape
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Crossing {
  Point point;
  std::int64_t steps = 0;
};

/// Integrates ẋ = y − εF(x), ẏ = −g(x) from `start` until the orbit next
/// crosses y = 0 going downward, i.e. returns to the right half of the
/// section after one clockwise turn. The crossing is localized to
/// |y| ≤ 1e-12. Throws DomainError("unbounded orbit") or ("no return").
Crossing next_crossing(const ConstructedSystem& sys, Point start, double epsilon,
                       const IntegratorOptions& opts = {});

struct DisplacementSample {
  double a = 0.0;
  double d = 0.0;  ///< H(B) − H(A)
  double return_x = 0.0;
  std::int64_t steps = 0;
};

DisplacementSample displacement(const ConstructedSystem& sys, double a, double epsilon,
                                const IntegratorOptions& opts = {});

struct CycleBracket {
  double a_lo = 0.0;
  double a_hi = 0.0;
};

struct CycleCount {
  double epsilon = 0.0;
  double a_lo = 0.0;
  double a_hi = 0.0;
  int count = 0;
  std::vector<CycleBracket> brackets;
  std::vector<DisplacementSample> samples;
};

/// Sign changes of d(a) over grid+1 equally spaced starts in [a_lo, a_hi],
/// each bisected to |Δa| ≤ 1e-6. Displacements within the integration noise
/// are treated as zero, and ε = 0 or F = 0 short-circuits to no cycles.
CycleCount count_limit_cycles(const ConstructedSystem& sys, double a_lo, double a_hi, double epsilon,
                              int grid = 32, Exec exec = Exec::parallel, const IntegratorOptions& opts = {});

struct StableCount {
  double epsilon = 0.0;  ///< largest ε of the first three equal counts
  int count = 0;
  std::vector<std::pair<double, int>> history;
};

/// Halves ε from eps_start until three consecutive counts agree. Throws
/// DomainError("unresolved at desk scale") after 12 halvings.
StableCount shrink_until_stable(const ConstructedSystem& sys, double a_lo, double a_hi, double eps_start,
                                int grid = 32, Exec exec = Exec::parallel, const IntegratorOptions& opts = {});

/// Richardson estimate of lim d(a, ε)/ε from ε, ε/2, ε/4.
double first_order_displacement(const ConstructedSystem& sys, double a, double eps = 1e-2,
                                const IntegratorOptions& opts = {});

}  // namespace lienard
