#include "lienard/verifier.hpp"

#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "lienard/error.hpp"

namespace lienard {

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;

struct Field {
  const Polynomial& F;
  const Polynomial& g;
  double epsilon;
  void operator()(const State& s, State& ds, double /*t*/) const {
    ds[0] = s[1] - epsilon * F(s[0]);
    ds[1] = -g(s[0]);
  }
};

// Solves y(prev, h) = 0 for h in (0, h_max], where y(prev, 0) > 0 ≥ y(prev, h_max).
State localize(const Field& field, const State& prev, double t, double h_max, State end) {
  odeint::runge_kutta_dopri5<State> rk;
  double lo = 0.0, hi = h_max;
  double h = h_max * prev[1] / (prev[1] - end[1]);
  State s = end, dprev{}, dout{};
  field(prev, dprev, t);
  for (int iter = 0; iter < 100; ++iter) {
    if (!(h > lo && h < hi)) h = 0.5 * (lo + hi);
    rk.do_step(field, prev, dprev, t, s, dout, h);
    if (std::abs(s[1]) <= 1e-12) return s;
    (s[1] > 0.0 ? lo : hi) = h;
    const double slope = -field.g(s[0]);
    h = slope != 0.0 ? h - s[1] / slope : 0.5 * (lo + hi);
  }
  if (std::abs(s[1]) <= 1e-10) return s;
  throw DomainError("section crossing could not be localized");
}

double noise_floor(double energy) { return 1e-8 * (1.0 + std::abs(energy)); }

int sign_with_floor(const DisplacementSample& s, double energy) {
  if (std::abs(s.d) <= noise_floor(energy)) return 0;
  return s.d > 0.0 ? 1 : -1;
}

}  // namespace

Crossing next_crossing(const ConstructedSystem& sys, Point start, double epsilon, const IntegratorOptions& opts) {
  if (!std::isfinite(epsilon)) throw DomainError("epsilon must be finite");
  if (!(sys.g(start.x) > 0.0) && start.y <= 0.0)
    throw DomainError("start point is not on the returning branch of the section");
  const Field field{sys.F, sys.g, epsilon};
  auto stepper = odeint::make_controlled(opts.atol, opts.rtol, odeint::runge_kutta_dopri5<State>());
  State s{start.x, start.y};
  double t = 0.0, dt = 1e-3;
  for (std::int64_t steps = 1; steps <= opts.max_steps; ++steps) {
    const State prev = s;
    const double t_prev = t;
    if (stepper.try_step(field, s, t, dt) != odeint::success) continue;
    if (!std::isfinite(s[0]) || !std::isfinite(s[1]) || std::abs(s[0]) > opts.box || std::abs(s[1]) > opts.box)
      throw DomainError("unbounded orbit");
    if (prev[1] > 0.0 && s[1] <= 0.0) {
      const State hit = s[1] == 0.0 ? s : localize(field, prev, t_prev, t - t_prev, s);
      return {{hit[0], hit[1]}, steps};
    }
  }
  throw DomainError("no return");
}

DisplacementSample displacement(const ConstructedSystem& sys, double a, double epsilon, const IntegratorOptions& opts) {
  const Polynomial G = antiderivative(sys.g);
  const Crossing c = next_crossing(sys, {a, 0.0}, epsilon, opts);
  DisplacementSample out;
  out.a = a;
  out.return_x = c.point.x;
  out.d = G(c.point.x) + 0.5 * c.point.y * c.point.y - G(a);
  out.steps = c.steps;
  return out;
}

CycleCount count_limit_cycles(const ConstructedSystem& sys, double a_lo, double a_hi, double epsilon, int grid,
                              Exec exec, const IntegratorOptions& opts) {
  if (!(a_lo < a_hi)) throw DomainError("count_limit_cycles: empty section window");
  if (grid < 2) throw DomainError("count_limit_cycles: grid must be at least 2");
  CycleCount out;
  out.epsilon = epsilon;
  out.a_lo = a_lo;
  out.a_hi = a_hi;
  if (epsilon == 0.0 || sys.F.is_zero()) return out;

  const Polynomial G = antiderivative(sys.g);
  out.samples.resize(static_cast<std::size_t>(grid) + 1);
  for_each_index(out.samples.size(), exec, [&](std::size_t i) {
    const double a = a_lo + (a_hi - a_lo) * static_cast<double>(i) / grid;
    out.samples[i] = displacement(sys, a, epsilon, opts);
  });
  for (const auto& s : out.samples)
    if (!std::isfinite(s.d)) throw DomainError("non-finite displacement at a = " + std::to_string(s.a));

  std::vector<CycleBracket> coarse;
  std::size_t last = out.samples.size();
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    const int si = sign_with_floor(out.samples[i], G(out.samples[i].a));
    if (si == 0) continue;
    if (last < out.samples.size() && si != sign_with_floor(out.samples[last], G(out.samples[last].a)))
      coarse.push_back({out.samples[last].a, out.samples[i].a});
    last = i;
  }

  out.brackets.resize(coarse.size());
  for_each_index(coarse.size(), exec, [&](std::size_t k) {
    double lo = coarse[k].a_lo, hi = coarse[k].a_hi;
    const int s_lo = sign_with_floor(displacement(sys, lo, epsilon, opts), G(lo));
    while (hi - lo > 1e-6) {
      const double mid = 0.5 * (lo + hi);
      const int s = sign_with_floor(displacement(sys, mid, epsilon, opts), G(mid));
      if (s == 0) break;
      (s == s_lo ? lo : hi) = mid;
    }
    out.brackets[k] = {lo, hi};
  });
  out.count = static_cast<int>(out.brackets.size());
  return out;
}

StableCount shrink_until_stable(const ConstructedSystem& sys, double a_lo, double a_hi, double eps_start, int grid,
                                Exec exec, const IntegratorOptions& opts) {
  if (!(eps_start > 0.0)) throw DomainError("shrink_until_stable: eps_start must be positive");
  StableCount out;
  if (sys.F.is_zero()) {
    out.epsilon = eps_start;
    out.history.emplace_back(eps_start, 0);
    return out;
  }
  double eps = eps_start;
  for (int halving = 0; halving <= 12; ++halving, eps *= 0.5) {
    out.history.emplace_back(eps, count_limit_cycles(sys, a_lo, a_hi, eps, grid, exec, opts).count);
    const std::size_t n = out.history.size();
    if (n >= 3 && out.history[n - 1].second == out.history[n - 2].second &&
        out.history[n - 2].second == out.history[n - 3].second) {
      out.epsilon = out.history[n - 3].first;
      out.count = out.history[n - 1].second;
      return out;
    }
  }
  throw DomainError("unresolved at desk scale");
}

double first_order_displacement(const ConstructedSystem& sys, double a, double eps, const IntegratorOptions& opts) {
  if (!(eps > 0.0)) throw DomainError("first_order_displacement: eps must be positive");
  auto D = [&](double e) { return displacement(sys, a, e, opts).d / e; };
  const double d1 = D(eps), d2 = D(0.5 * eps), d4 = D(0.25 * eps);
  const double r2 = 2.0 * d2 - d1, r4 = 2.0 * d4 - d2;
  return (4.0 * r4 - r2) / 3.0;
}

}  // namespace lienard
