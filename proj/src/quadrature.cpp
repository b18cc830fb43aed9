#include "lienard/quadrature.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace lienard {

namespace {

constexpr int kLevels = 9;  // 16 .. 4096

GaussRule build_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi's initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::array<std::once_flag, kLevels> flags;
  static std::array<GaussRule, kLevels> rules;
  int level = 0;
  while (level < kLevels && (kMinGaussPoints << level) != n) ++level;
  if (level == kLevels) throw std::invalid_argument("gauss_legendre: unsupported point count");
  std::call_once(flags[static_cast<std::size_t>(level)],
                 [&] { rules[static_cast<std::size_t>(level)] = build_rule(n); });
  return rules[static_cast<std::size_t>(level)];
}

}  // namespace lienard
