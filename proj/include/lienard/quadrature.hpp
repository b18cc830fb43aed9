#pragma once

#include <span>
#include <vector>

namespace lienard {

/// Gauss–Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Point counts used by the doubling schedule: 16, 32, ..., 4096.
inline constexpr int kMinGaussPoints = 16;
inline constexpr int kMaxGaussPoints = 4096;

/// Cached rule for n = 16·2^k ≤ 4096 points. Thread-safe.
const GaussRule& gauss_legendre(int n);

}  // namespace lienard
