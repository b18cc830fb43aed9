#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "lienard/constructor.hpp"
#include "lienard/exec.hpp"

namespace lienard {

using Rational = boost::rational<std::int64_t>;

enum class BoundSource {
  registry,   ///< earlier results quoted with their validity ranges
  lemma21,
  thm31,
  thm32_s1,
  thm32_s2,
  thm41,
  thm42,
  thm43,
  thm51,
  thm52,
};

/// "Registry§1", "Lemma2.1", "Thm3.1", ...
std::string to_string(BoundSource source);

/// A real-valued lower bound H(n, m) ≥ bound. `direct` is false when the
/// bound was proved for smaller degrees (n', m') and carried over by
/// H(n, m) ≥ H(n', m').
struct BoundRecord {
  int n = 0;
  int m = 0;
  double bound = 0.0;
  BoundSource source = BoundSource::registry;
  std::map<std::string, double> params;
  bool direct = true;

  /// Integer bound, with a 1e-9 allowance for rounding in the real formula.
  long long ceiling() const;
};

/// Registry certificates with degrees ≤ (n, m) from the four two-parameter
/// families: Z(n,1,[n/2]), Z(n,2,[(2n+1)/3]), Z(n,3,[(3n+14)/4]) for
/// 2 ≤ n ≤ 8 and Z(n,4,n+4−[(n+1)/5]) for 3 ≤ n ≤ 18.
std::vector<ZCertificate> lemma21_certificates(int n, int m);

/// Largest k among lemma21_certificates(n, m); 0 when n or m is below 1.
int lemma21_best(int n, int m);

/// m ∈ {3,4}: 2[(n−1)/4] + [(n−1)/2];  m ∈ {5,6}: 2[(n−1)/3] + [(n−1)/2].
BoundRecord thm31_bound(int n, int m);

/// Slopes and intercepts of the two linear families in n.
Rational l_p(int p);
Rational r_p(int p);
Rational delta_p(int p);
Rational beta_p(int p);
/// Same intercepts through δ_p = 2δ_{p−1} + 2l_{p−1} + 1, δ₁ = 3 (and the
/// β analogue with r).
Rational delta_p_recursive(int p);
Rational beta_p_recursive(int p);

/// n ≥ m ≥ 7. m = 2^{p+1}−2+j gives l_p n − δ_p, m = 3·2^p−2+j gives
/// r_p n − β_p, 1 ≤ j ≤ 2^p.
BoundRecord thm32_bound(int n, int m);

/// Node (p, i) of the composition tree started at a seed, 1 ≤ i ≤ 2^p.
/// The closed form only covers the two extreme indices.
Triple seq_closed_form(const Triple& seed, int p, std::int64_t i);
Triple seq_recursive(const Triple& seed, int p, std::int64_t i);

/// The (i, j) with m = 2^i(m0+1) − 2 + j, 1 ≤ j ≤ 2^i.
std::optional<std::pair<int, std::int64_t>> s_membership(std::int64_t m, std::int64_t m0);

/// Every m in [M, m_max] lies in some S_{m0} with M ≤ m0 ≤ 2M.
bool partition_check(std::int64_t M, std::int64_t m_max);

/// Composition tree bound H(n_{pi}, m_{pj}) ≥ k_{pi} from a seed.
BoundRecord thm41_bound(const Triple& seed, int p, std::int64_t i, std::int64_t j);

/// (k0 − 1)/(m0 + 1) − ln(m0 + 1)/(2 ln 2).
double N(double m0, double k0);
double N1(double m0);
double N2(double m0, double k0);

/// H(m, m) from the best registry seed Z(m0, m0, k0) along the two
/// one-parameter branches m = 2^p k − 1 and m = 2^p (k+1) − 2, m0 = k − 1,
/// p ≥ 0.
BoundRecord thm42_bound(int m);

/// (m+2)ln(m+2)/(3 ln 2) − (m+2)/3·(1 + ln 3/ln 2) + 1, m ≥ 3.
BoundRecord thm43_bound(int m);

/// N1(m0)(m+2)ln(m+2)/(2 ln 2) + N2(m0, k0)(m+2) + 1 for m ∈ S_{m0}.
double eq43(int m, int m0, double k0);

enum class SeedPolicy { registry, fallback };

/// H(m − r, m), maximized over the three decompositions of m and over seeds
/// Z(m0 − r, m0, k0). The fallback policy uses k0 = 0 only.
BoundRecord thm51_bound(int m, int r, SeedPolicy policy = SeedPolicy::registry);

/// The two intercepts B_{k,r} = N(k−1, k0−[r/2]) and
/// B̄_{k,r} = N(k, k0−1−[r/2]).
std::pair<double, double> thm51_intercepts(int k, int r, int k0);

/// H(m − 1, m): (m+1)ln(m+1)/(2 ln 2) + 1 for m = 2^{p+1} − 1, otherwise the
/// thm43 expression.
BoundRecord thm52_bound(int m);

/// Largest ceiling over every applicable source, allowing degree slack.
/// Ties go to the bound proved at exactly (n, m), then to the earlier source.
BoundRecord best_bound(int n, int m);

/// best_bound for all 1 ≤ n ≤ n_max, 1 ≤ m ≤ m_max, row-major in n.
std::vector<BoundRecord> bounds_table(int n_max, int m_max, Exec exec = Exec::parallel);

/// best_bound(m, m) / ((m+2) ln(m+2)).
double asymptotic_ratio(int m);

}  // namespace lienard
