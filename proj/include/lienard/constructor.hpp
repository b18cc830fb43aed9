#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lienard/abelian.hpp"
#include "lienard/exec.hpp"
#include "lienard/polynomial.hpp"
#include "lienard/potential.hpp"

namespace lienard {

/// An energy window of one period annulus together with the sign-change
/// zeros of the Melnikov function found inside it.
struct HWindow {
  int annulus_id = 0;
  double h_lo = 0.0;
  double h_hi = 0.0;
  std::vector<double> zeros;
};

enum class Parity { odd, even };

std::string to_string(Parity parity);
Parity parse_parity(const std::string& text);

/// Node of the construction tree a certificate came from.
struct Provenance {
  enum class Kind { seed, registry, doubled, composed, weakened };
  Kind kind = Kind::seed;
  std::string label;                 ///< seed name or citation
  std::optional<Parity> parity;      ///< composed nodes
  std::optional<double> x0;          ///< doubled and composed nodes
  std::shared_ptr<const Provenance> parent;
};

std::string to_string(Provenance::Kind kind);

/// Claim Z(n, m, k): some system with deg F ≤ n+1, deg g ≤ m, g → +∞, has at
/// least k limit cycles of odd multiplicity for all small ε.
///
/// A numerically realized certificate lists where its k Melnikov zeros are;
/// registry-only certificates carry no windows.
struct ZCertificate {
  int n = 1;
  int m = 1;
  int k = 0;
  std::vector<HWindow> windows;
  double epsilon0 = 0.0;
  Provenance provenance;

  int recorded_zeros() const;
  bool realized() const { return !windows.empty() && recorded_zeros() == k; }
};

/// ẋ = y − εF(x), ẏ = −g(x), with F = λF₂ + μ Σ b_j x^{2j+1} when the system
/// came out of compose_step.
struct ConstructedSystem {
  Polynomial F;
  Polynomial g;
  double lambda = 1.0;
  double mu = 0.0;
  std::vector<double> b;
  std::optional<double> x0;
  ZCertificate certificate;
};

/// Van der Pol seed F = x³/3 − x, g = x realizing Z(2, 1, 1): one zero of M
/// at h = 2 in the window [0.5, 8].
ConstructedSystem van_der_pol_seed();

/// Recomputes the zeros of M in every window of the certificate from F and
/// sets k to their total.
void realize(ConstructedSystem& sys, Exec exec = Exec::parallel);

/// Mirrors a realized system into two wells through x ↦ x² + x0.
///
/// F₂ = F(x² + x0), G₂ = G(x² + x0) − G(x0), g₂ = G₂′. With no x0 given,
/// x* = 1.1·max |turning point| over the orbits at the recorded zeros and
/// x0 = −x* − 1. The result carries Z(2n+1, 2m+1, 2k), with each seed window
/// re-profiled in both wells. Throws DomainError("shift too small") when
/// x0 ≥ −x*.
ConstructedSystem doubling_transform(const ConstructedSystem& seed, std::optional<double> x0 = std::nullopt,
                                     Exec exec = Exec::parallel);

/// Solves Σ_{j≥1} b_j I_j(h_i) = −b0 I_0(h_i) for b_1..b_q given
/// basis[i][j] = I_j(h_i), i < q, j ≤ q. Throws DomainError("degenerate
/// targets") when the scaled system is singular.
std::vector<double> solve_placement(const std::vector<std::vector<double>>& basis, double b0);

struct Placement {
  std::vector<double> b;       ///< b_0 .. b_q
  std::vector<double> targets;
  bool alternating = true;     ///< b_j b_{j+1} < 0 for every j
  MelnikovProfile verification;
};

/// Chooses b so that Σ b_j I_j vanishes at each target energy on the outer
/// annulus of an even coercive potential, then re-profiles over
/// [h_star, 4·max target] and requires exactly q sign changes, each within
/// 1e-3 (relative) of its target. Auto targets are h_star·4^i, i = 1..q.
Placement place_outer_zeros(const Potential& P2, int q, double h_star,
                            const std::optional<std::vector<double>>& targets, double b0,
                            Exec exec = Exec::parallel);

std::vector<double> select_perturbation_coefficients(const Potential& P2, int q, double h_star,
                                                     const std::optional<std::vector<double>>& targets,
                                                     double b0);

struct ComposeOptions {
  std::optional<double> lambda;  ///< default 0.1·ε₀ of the seed
  double mu_ratio = 1e-2;
  int max_mu_shrinks = 8;        ///< tenfold reductions of mu_ratio tried
  std::optional<double> x0;
  double b0 = 1.0;
  Exec exec = Exec::parallel;
};

/// Degree bookkeeping of one composition: (2n+1, 2m+1, 2k+n) for odd parity,
/// (2n+2, 2m+1, 2k+n+1) for even.
ZCertificate compose_certificate(const ZCertificate& seed, Parity parity);

/// One full composition: doubling, then q = n (odd) or n+1 (even) zeros
/// placed on the outer annulus by the odd perturbation. Every window of the
/// resulting certificate is re-profiled with the final F; when a window
/// loses zeros, μ/λ is cut tenfold and the check repeated.
ConstructedSystem compose_step(const ConstructedSystem& seed, Parity parity, const ComposeOptions& options = {});

/// Same k under looser degree bounds. Throws DomainError when asked to
/// tighten either degree.
ZCertificate weaken_certificate(const ZCertificate& c, int n_new, int m_new);

struct Triple {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t k = 0;
  friend bool operator==(const Triple&, const Triple&) = default;
};

/// Certificates reachable by repeated composition from a seed: level i has
/// 2^i entries, and Z(n_{i,a}, m_{i,b}, k_{i,a}) holds for every a, b.
/// Nodes are computed on demand from the binary path of their index.
class RecursionPlan {
 public:
  RecursionPlan(Triple seed, int depth);

  int depth() const { return depth_; }
  const Triple& seed() const { return seed_; }
  /// (n_{level,index}, m_{level,index}, k_{level,index}), 1 ≤ index ≤ 2^level.
  Triple node(int level, std::int64_t index) const;
  /// All 2^level nodes of one level (level ≤ 24).
  std::vector<Triple> level(int level) const;
  /// Z(n_{level,i}, m_{level,j}, k_{level,i}).
  Triple certificate(int level, std::int64_t i, std::int64_t j) const;

 private:
  Triple seed_;
  int depth_;
};

RecursionPlan plan_recursion(Triple seed, int depth);

/// Applies compose_step along the parity path (depth 1 or 2).
ConstructedSystem realize_plan(const ConstructedSystem& seed, const std::vector<Parity>& parity_path,
                               const ComposeOptions& options = {});

}  // namespace lienard
