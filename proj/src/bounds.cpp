#include "lienard/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lienard/error.hpp"

namespace lienard {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double to_double(const Rational& q) { return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator()); }

std::int64_t pow2(int p) { return std::int64_t{1} << p; }

double xlogx_half(double v) { return v * std::log(v) / (2.0 * kLn2); }

BoundRecord make(int n, int m, double bound, BoundSource source, std::map<std::string, double> params = {}) {
  BoundRecord r;
  r.n = n;
  r.m = m;
  r.bound = bound;
  r.source = source;
  r.params = std::move(params);
  return r;
}

bool better(const BoundRecord& a, const BoundRecord& b) {
  if (a.ceiling() != b.ceiling()) return a.ceiling() > b.ceiling();
  if (a.direct != b.direct) return a.direct;
  return a.source < b.source;
}

// Candidate proved at (n', m') ≤ (n, m), relabeled to (n, m).
void offer(std::vector<BoundRecord>& out, BoundRecord r, int n, int m) {
  if (!std::isfinite(r.bound)) return;
  if (r.n != n || r.m != m) {
    r.params["n_from"] = r.n;
    r.params["m_from"] = r.m;
    r.direct = false;
    r.n = n;
    r.m = m;
  }
  out.push_back(std::move(r));
}

int lemma21_family(int family, int n) {
  switch (family) {
    case 1: return n / 2;
    case 2: return (2 * n + 1) / 3;
    case 3: return (3 * n + 14) / 4;
    default: return n + 4 - (n + 1) / 5;
  }
}

// Valid n range of each family; the degree in g equals the family index.
std::pair<int, int> lemma21_range(int family) {
  switch (family) {
    case 1:
    case 2: return {1, 1 << 30};
    case 3: return {2, 8};
    default: return {3, 18};
  }
}

const char* lemma21_label(int family) {
  switch (family) {
    case 1: return "Lemma2.1 Z(n,1,[n/2])";
    case 2: return "Lemma2.1 Z(n,2,[(2n+1)/3])";
    case 3: return "Lemma2.1 Z(n,3,[(3n+14)/4]), 2<=n<=8";
    default: return "Lemma2.1 Z(n,4,n+4-[(n+1)/5]), 3<=n<=18";
  }
}

void registry_candidates(int n, int m, std::vector<BoundRecord>& out) {
  const auto src = BoundSource::registry;
  auto add = [&](int n1, int m1, double v, double entry) { offer(out, make(n1, m1, v, src, {{"entry", entry}}), n, m); };
  add(n, m, (n + m - 1) / 2, 1);
  if (n >= 2 && m >= 2) add(n, m, std::max((m - 2) / 3 + (2 * n + 1) / 3, (n - 2) / 3 + (2 * m + 1) / 3), 2);
  if (n >= 2 && m >= 3) add(2, 3, 5, 3);
  if (n >= 2 && m >= 3) {
    const int n1 = std::min(n, 50);
    add(n1, 3, 2 * ((3 * n1 + 6) / 8), 4);
  }
  if (n >= 9 && m >= 3) {
    const int n1 = std::min(n, 22);
    add(n1, 3, n1 + 2 - (n1 + 1) / 4, 5);
  }
  if (m >= 4) {
    int n1 = 0;
    for (int c : {2, 3, 5, 6, 7, 8})
      if (c <= n) n1 = c;
    if (n1 > 0) add(n1, 4, n1 + 3, 6);
    if (n >= 4) add(4, 4, 6, 7);
    if (n >= 9) add(9, 4, 9, 8);
    if (n >= 10) {
      const int n1b = std::min(n, 14);
      add(n1b, 4, n1b, 9);
    }
  }
}

void lemma21_candidates(int n, int m, std::vector<BoundRecord>& out) {
  for (int family = 1; family <= std::min(m, 4); ++family) {
    const auto [lo, hi] = lemma21_range(family);
    if (n < lo) continue;
    const int n1 = std::min(n, hi);
    offer(out, make(n1, family, lemma21_family(family, n1), BoundSource::lemma21, {{"family", family}}), n, m);
  }
}

std::optional<BoundRecord> thm42_at(int m) {
  if (m < 1) return std::nullopt;
  std::optional<BoundRecord> best;
  auto consider = [&](double v, int p, int k, int branch, int k0) {
    BoundRecord r = make(m, m, v, BoundSource::thm42,
                         {{"p", p}, {"k", k}, {"m0", k - 1}, {"k0", k0}, {"branch", branch}});
    if (!best || r.bound > best->bound + 1e-12) best = std::move(r);
  };
  for (int p = 0; pow2(p) <= m + 2; ++p) {
    const std::int64_t step = pow2(p);
    if ((m + 1) % step == 0) {
      const int k = static_cast<int>((m + 1) / step);
      if (k >= 2) {
        const int m0 = k - 1, k0 = lemma21_best(m0, m0);
        consider(xlogx_half(m + 1.0) + N(m0, k0) * (m + 1.0) + 1.0, p, k, 1, k0);
      }
    }
    if ((m + 2) % step == 0) {
      const int k = static_cast<int>((m + 2) / step) - 1;
      if (k >= 2) {
        const int m0 = k - 1, k0 = lemma21_best(m0, m0);
        consider(xlogx_half(m + 2.0) + N(m0 + 1, k0) * (m + 2.0) + 1.0, p, k, 2, k0);
      }
    }
  }
  return best;
}

std::optional<BoundRecord> thm51_at(int m, int r, SeedPolicy policy) {
  if (m < 1 || r < 1) return std::nullopt;
  const int fl = r / 2;
  auto seed = [&](int m0) { return policy == SeedPolicy::registry ? lemma21_best(m0 - r, m0) : 0; };
  std::optional<BoundRecord> best;
  auto consider = [&](double v, std::map<std::string, double> params) {
    params["r"] = r;
    BoundRecord rec = make(m - r, m, v, BoundSource::thm51, std::move(params));
    if (!best || rec.bound > best->bound + 1e-12) best = std::move(rec);
  };
  for (int p = 1; pow2(p) <= m + 2; ++p) {
    const std::int64_t step = pow2(p);
    if ((m + 1) % step == 0) {
      const int k = static_cast<int>((m + 1) / step);
      if (k >= 2) {
        const int m0 = k - 1, k0 = seed(m0);
        consider(xlogx_half(m + 1.0) + N(m0, k0 - fl) * (m + 1.0) + 1.0 + fl,
                 {{"p", p}, {"k", k}, {"m0", m0}, {"k0", k0}, {"branch", 1}});
      }
    }
    if ((m + 2) % step == 0) {
      const int k = static_cast<int>((m + 2) / step) - 1;
      if (k >= 2) {
        const int m0 = k - 1, k0 = seed(m0);
        consider(xlogx_half(m + 2.0) + N(m0 + 1, k0 - 1 - fl) * (m + 2.0) + 2.0 + fl,
                 {{"p", p}, {"k", k}, {"m0", m0}, {"k0", k0}, {"branch", 2}});
      }
    }
    // m ∈ S_{m0} at level p: 2^p(m0+1) − 1 ≤ m ≤ 2^p(m0+2) − 2.
    const std::int64_t lo = std::max<std::int64_t>(1, (m + 2 + step - 1) / step - 2);
    const std::int64_t hi = (m + 1) / step - 1;
    for (std::int64_t m0 = lo; m0 <= hi; ++m0) {
      const int k0 = seed(static_cast<int>(m0));
      consider(N1(m0) * xlogx_half(m + 2.0) + N2(m0, k0 - fl) * (m + 2.0) + 1.0 + fl,
               {{"p", p}, {"m0", static_cast<double>(m0)}, {"k0", k0}, {"branch", 3}});
    }
  }
  return best;
}

}  // namespace

std::string to_string(BoundSource source) {
  switch (source) {
    case BoundSource::registry: return "Registry§1";
    case BoundSource::lemma21: return "Lemma2.1";
    case BoundSource::thm31: return "Thm3.1";
    case BoundSource::thm32_s1: return "Thm3.2-S1";
    case BoundSource::thm32_s2: return "Thm3.2-S2";
    case BoundSource::thm41: return "Thm4.1";
    case BoundSource::thm42: return "Thm4.2";
    case BoundSource::thm43: return "Thm4.3";
    case BoundSource::thm51: return "Thm5.1";
    case BoundSource::thm52: return "Thm5.2";
  }
  return "?";
}

long long BoundRecord::ceiling() const { return static_cast<long long>(std::ceil(bound - 1e-9)); }

std::vector<ZCertificate> lemma21_certificates(int n, int m) {
  std::vector<ZCertificate> out;
  for (int family = 1; family <= std::min(m, 4); ++family) {
    const auto [lo, hi] = lemma21_range(family);
    for (int n1 = lo; n1 <= std::min(n, hi); ++n1) {
      ZCertificate c;
      c.n = n1;
      c.m = family;
      c.k = lemma21_family(family, n1);
      c.provenance.kind = Provenance::Kind::registry;
      c.provenance.label = lemma21_label(family);
      out.push_back(std::move(c));
    }
  }
  return out;
}

int lemma21_best(int n, int m) {
  if (n < 1 || m < 1) return 0;
  int best = 0;
  for (int family = 1; family <= std::min(m, 4); ++family) {
    const auto [lo, hi] = lemma21_range(family);
    if (n >= lo) best = std::max(best, lemma21_family(family, std::min(n, hi)));
  }
  return best;
}

BoundRecord thm31_bound(int n, int m) {
  if (m < 3 || m > 6) throw DomainError("thm31: m must be 3, 4, 5 or 6");
  if (n < 3) throw DomainError("thm31: n must be at least 3");
  const int first = m <= 4 ? 2 * ((n - 1) / 4) : 2 * ((n - 1) / 3);
  return make(n, m, first + (n - 1) / 2, BoundSource::thm31);
}

Rational l_p(int p) { return Rational(p + 1, 2); }
Rational r_p(int p) { return Rational(p, 2) + Rational(2, 3); }

Rational delta_p(int p) {
  if (p < 1 || p > 60) throw DomainError("delta_p: p out of range");
  Rational sum = 3 * pow2(p - 1);
  for (int j = 2; j <= p; ++j) sum += (j + 1) * pow2(p - j);
  return sum;
}

Rational beta_p(int p) {
  if (p < 1 || p > 60) throw DomainError("beta_p: p out of range");
  Rational sum = 3 * pow2(p - 1);
  for (int j = 2; j <= p; ++j) sum += (Rational(j) + Rational(4, 3)) * pow2(p - j);
  return sum;
}

Rational delta_p_recursive(int p) {
  if (p < 1 || p > 60) throw DomainError("delta_p: p out of range");
  Rational l = 1, d = 3;
  for (int q = 2; q <= p; ++q) {
    d = 2 * d + 2 * l + 1;
    l += Rational(1, 2);
  }
  return d;
}

Rational beta_p_recursive(int p) {
  if (p < 1 || p > 60) throw DomainError("beta_p: p out of range");
  Rational r = Rational(7, 6), b = 3;
  for (int q = 2; q <= p; ++q) {
    b = 2 * b + 2 * r + 1;
    r += Rational(1, 2);
  }
  return b;
}

BoundRecord thm32_bound(int n, int m) {
  if (m < 7) throw DomainError("thm32: m must be at least 7");
  if (n < m) throw DomainError("thm32: needs n >= m");
  for (int p = 1; pow2(p + 1) - 1 <= m; ++p) {
    const std::int64_t s1_lo = pow2(p + 1) - 1, s2_lo = 3 * pow2(p) - 1, s2_hi = pow2(p + 2) - 2;
    if (m < s1_lo || m > s2_hi) continue;
    if (m < s2_lo) {
      const double v = to_double(l_p(p)) * n - to_double(delta_p(p));
      return make(n, m, v, BoundSource::thm32_s1,
                  {{"p", p}, {"j", static_cast<double>(m - s1_lo + 1)}, {"slope", to_double(l_p(p))},
                   {"intercept", to_double(delta_p(p))}});
    }
    const double v = to_double(r_p(p)) * n - to_double(beta_p(p));
    return make(n, m, v, BoundSource::thm32_s2,
                {{"p", p}, {"j", static_cast<double>(m - s2_lo + 1)}, {"slope", to_double(r_p(p))},
                 {"intercept", to_double(beta_p(p))}});
  }
  throw DomainError("thm32: no decomposition of m");
}

Triple seq_closed_form(const Triple& seed, int p, std::int64_t i) {
  if (p < 0 || p > 30) throw DomainError("seq: p out of range");
  const std::int64_t top = pow2(p);
  if (i != 1 && i != top) throw DomainError("seq: closed form covers i = 1 and i = 2^p only");
  const std::int64_t half = p == 0 ? 0 : p * pow2(p - 1);
  const std::int64_t tail = i == 1 ? seed.n + 1 : seed.n + 2;
  return {top * (seed.n + 1) - 2 + i, top * (seed.m + 1) - 2 + i, top * (seed.k - 1) + half * tail + 1};
}

Triple seq_recursive(const Triple& seed, int p, std::int64_t i) {
  if (p == 0) {
    if (i != 1) throw DomainError("seq: index out of range");
    return seed;
  }
  return RecursionPlan(seed, p).node(p, i);
}

std::optional<std::pair<int, std::int64_t>> s_membership(std::int64_t m, std::int64_t m0) {
  if (m < 1 || m0 < 1) return std::nullopt;
  for (int i = 0; i < 62 && pow2(i) * (m0 + 1) - 1 <= m; ++i) {
    const std::int64_t base = pow2(i) * (m0 + 1) - 2;
    if (m - base <= pow2(i)) return std::pair{i, m - base};
  }
  return std::nullopt;
}

bool partition_check(std::int64_t M, std::int64_t m_max) {
  if (M < 1) throw DomainError("partition_check: M must be positive");
  for (std::int64_t m = M; m <= m_max; ++m) {
    bool found = false;
    for (int i = 0; !found && pow2(i) <= m + 2; ++i) {
      const std::int64_t step = pow2(i);
      const std::int64_t lo = std::max(M, (m + 2 + step - 1) / step - 2);
      const std::int64_t hi = std::min(2 * M, (m + 1) / step - 1);
      found = lo <= hi;
    }
    if (!found) return false;
  }
  return true;
}

BoundRecord thm41_bound(const Triple& seed, int p, std::int64_t i, std::int64_t j) {
  const RecursionPlan plan(seed, p);
  const Triple row = plan.node(p, i);
  const Triple col = plan.node(p, j);
  return make(static_cast<int>(row.n), static_cast<int>(col.m), static_cast<double>(row.k), BoundSource::thm41,
              {{"p", p},
               {"i", static_cast<double>(i)},
               {"j", static_cast<double>(j)},
               {"n0", static_cast<double>(seed.n)},
               {"m0", static_cast<double>(seed.m)},
               {"k0", static_cast<double>(seed.k)}});
}

double N(double m0, double k0) { return (k0 - 1.0) / (m0 + 1.0) - std::log(m0 + 1.0) / (2.0 * kLn2); }
double N1(double m0) { return (m0 + 1.0) / (m0 + 2.0); }
double N2(double m0, double k0) { return (k0 - 1.0) / (m0 + 2.0) - N1(m0) * std::log(m0 + 2.0) / (2.0 * kLn2); }

BoundRecord thm42_bound(int m) {
  auto r = thm42_at(m);
  if (!r) throw DomainError("thm42: no decomposition of m");
  return *r;
}

BoundRecord thm43_bound(int m) {
  if (m < 3) throw DomainError("thm43: m must be at least 3");
  const double s = m + 2.0;
  const double v = s * std::log(s) / (3.0 * kLn2) - s / 3.0 * (1.0 + std::log(3.0) / kLn2) + 1.0;
  return make(m, m, v, BoundSource::thm43);
}

double eq43(int m, int m0, double k0) { return N1(m0) * xlogx_half(m + 2.0) + N2(m0, k0) * (m + 2.0) + 1.0; }

BoundRecord thm51_bound(int m, int r, SeedPolicy policy) {
  if (r < 1) throw DomainError("thm51: r must be positive");
  auto rec = thm51_at(m, r, policy);
  if (!rec) throw DomainError("thm51: no decomposition of m");
  if (policy == SeedPolicy::fallback) rec->params["fallback"] = 1;
  return *rec;
}

std::pair<double, double> thm51_intercepts(int k, int r, int k0) {
  if (k < 2 || r < 1) throw DomainError("thm51_intercepts: needs k >= 2 and r >= 1");
  const int fl = r / 2;
  return {N(k - 1, k0 - fl), N(k, k0 - 1 - fl)};
}

BoundRecord thm52_bound(int m) {
  if (m < 3) throw DomainError("thm52: m must be at least 3");
  BoundRecord r = thm43_bound(m);
  r.n = m - 1;
  r.source = BoundSource::thm52;
  r.params = {{"part", 2}};
  if (((m + 1) & m) == 0) {
    const double v = xlogx_half(m + 1.0) + 1.0;
    if (v > r.bound) {
      r.bound = v;
      r.params = {{"part", 1}, {"p", std::log2(m + 1.0) - 1.0}};
    }
  }
  return r;
}

BoundRecord best_bound(int n, int m) {
  if (n < 1 || m < 1) throw DomainError("best_bound: degrees must be positive");
  std::vector<BoundRecord> cands;
  registry_candidates(n, m, cands);
  lemma21_candidates(n, m, cands);

  if (n >= 3 && m >= 3) offer(cands, thm31_bound(n, m >= 5 ? std::min(m, 6) : m), n, m);

  const int M = std::min(n, m);
  for (int p = 2; pow2(p + 1) - 1 <= M; ++p) {
    const int s1_lo = static_cast<int>(pow2(p + 1) - 1), s2_lo = static_cast<int>(3 * pow2(p) - 1);
    const int s2_hi = static_cast<int>(pow2(p + 2) - 2);
    offer(cands, thm32_bound(n, M == m && m < s2_lo ? m : s1_lo), n, m);
    if (s2_lo <= M) offer(cands, thm32_bound(n, M == m && m <= s2_hi ? m : s2_lo), n, m);
  }

  if (n == m) {
    if (auto r = thm42_at(m)) offer(cands, *r, n, m);
  }
  {
    std::optional<BoundRecord> prefix;
    for (int m1 = 1; m1 <= (n == m ? M - 1 : M); ++m1) {
      auto r = thm42_at(m1);
      if (r && (!prefix || r->bound > prefix->bound)) prefix = std::move(r);
    }
    if (prefix) offer(cands, *prefix, n, m);
  }

  if (M >= 3) offer(cands, thm43_bound(M), n, m);

  {
    std::optional<BoundRecord> best51;
    for (int m1 = 3; m1 <= m; ++m1) {
      const int r = std::max(1, m1 - n);
      if (m1 - r < 1) continue;
      auto rec = thm51_at(m1, r, SeedPolicy::registry);
      if (!rec) continue;
      const bool exact = m1 == m && m1 - r == n;
      if (exact) {
        offer(cands, *rec, n, m);
      } else if (!best51 || rec->bound > best51->bound) {
        best51 = std::move(rec);
      }
    }
    if (best51) offer(cands, *best51, n, m);
  }

  const int top52 = std::min(m, n + 1);
  if (top52 >= 3) {
    BoundRecord general = thm52_bound(top52);
    general.params = {{"part", 2}};
    general.bound = thm43_bound(top52).bound;
    offer(cands, general, n, m);
    int special = 0;
    for (int p = 1; pow2(p + 1) - 1 <= top52; ++p) special = static_cast<int>(pow2(p + 1) - 1);
    if (special >= 3) offer(cands, thm52_bound(special), n, m);
  }

  const BoundRecord* best = &cands.front();
  for (const auto& c : cands)
    if (better(c, *best)) best = &c;
  return *best;
}

std::vector<BoundRecord> bounds_table(int n_max, int m_max, Exec exec) {
  if (n_max < 1 || m_max < 1) throw DomainError("bounds_table: limits must be positive");
  const auto count = static_cast<std::size_t>(n_max) * static_cast<std::size_t>(m_max);
  std::vector<BoundRecord> out(count);
  for_each_index(count, exec, [&](std::size_t idx) {
    const int n = static_cast<int>(idx / static_cast<std::size_t>(m_max)) + 1;
    const int m = static_cast<int>(idx % static_cast<std::size_t>(m_max)) + 1;
    out[idx] = best_bound(n, m);
  });
  return out;
}

double asymptotic_ratio(int m) {
  if (m < 3) throw DomainError("asymptotic_ratio: m must be at least 3");
  return static_cast<double>(best_bound(m, m).ceiling()) / ((m + 2.0) * std::log(m + 2.0));
}

}  // namespace lienard
