#include "lienard/constructor.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "lienard/error.hpp"

namespace lienard {

namespace {

constexpr int kProfilePoints = 64;

// Shrinks [lo, hi] into the annulus while keeping every zero inside.
std::pair<double, double> clip_window(const PeriodAnnulus& A, double lo, double hi, const std::vector<double>& zeros) {
  const double first = zeros.empty() ? hi : zeros.front();
  const double last = zeros.empty() ? lo : zeros.back();
  lo = std::max(lo, A.h_min + 0.1 * (first - A.h_min));
  if (std::isfinite(A.h_max)) hi = std::min(hi, A.h_max - 0.1 * (A.h_max - last));
  return {lo, hi};
}

const PeriodAnnulus& annulus_near(const std::vector<PeriodAnnulus>& all, double center) {
  const PeriodAnnulus* best = nullptr;
  for (const auto& a : all)
    if (!best || std::abs(a.center_x - center) < std::abs(best->center_x - center)) best = &a;
  if (!best || std::abs(best->center_x - center) > 1e-6 * (1.0 + std::abs(center)))
    throw DomainError("no annulus centered near x = " + std::to_string(center));
  return *best;
}

double max_abs_critical_energy(const Potential& P) {
  double top = 0.0;
  for (const auto& c : P.critical) top = std::max(top, std::abs(c.energy));
  return top;
}

}  // namespace

std::string to_string(Parity parity) { return parity == Parity::odd ? "odd" : "even"; }

Parity parse_parity(const std::string& text) {
  if (text == "odd") return Parity::odd;
  if (text == "even") return Parity::even;
  throw DomainError("parity must be 'odd' or 'even', got '" + text + "'");
}

std::string to_string(Provenance::Kind kind) {
  switch (kind) {
    case Provenance::Kind::seed: return "seed";
    case Provenance::Kind::registry: return "registry";
    case Provenance::Kind::doubled: return "doubled";
    case Provenance::Kind::composed: return "composed";
    case Provenance::Kind::weakened: return "weakened";
  }
  return "?";
}

int ZCertificate::recorded_zeros() const {
  int total = 0;
  for (const auto& w : windows) total += static_cast<int>(w.zeros.size());
  return total;
}

void realize(ConstructedSystem& sys, Exec exec) {
  const Potential P = potential_of(sys.g);
  const auto all = annuli(P);
  int total = 0;
  for (auto& w : sys.certificate.windows) {
    if (w.annulus_id < 0 || w.annulus_id >= static_cast<int>(all.size()))
      throw DomainError("window refers to unknown annulus " + std::to_string(w.annulus_id));
    const auto prof = profile(sys.F, P, all[static_cast<std::size_t>(w.annulus_id)], w.h_lo, w.h_hi, kProfilePoints, exec);
    w.zeros.clear();
    for (const auto& z : prof.zeros) w.zeros.push_back(z.h);
    total += static_cast<int>(w.zeros.size());
  }
  sys.certificate.k = total;
}

ConstructedSystem van_der_pol_seed() {
  ConstructedSystem sys;
  sys.F = Polynomial({0.0, -1.0, 0.0, 1.0 / 3.0});
  sys.g = Polynomial({0.0, 1.0});
  sys.certificate.n = 2;
  sys.certificate.m = 1;
  sys.certificate.epsilon0 = 0.5;
  sys.certificate.windows = {{0, 0.5, 8.0, {}}};
  sys.certificate.provenance.kind = Provenance::Kind::seed;
  sys.certificate.provenance.label = "van der Pol";
  realize(sys, Exec::serial);
  return sys;
}

ConstructedSystem doubling_transform(const ConstructedSystem& seed, std::optional<double> x0, Exec exec) {
  const ZCertificate& cert = seed.certificate;
  if (cert.k > 0 && !cert.realized()) throw DomainError("seed certificate is not numerically realized");
  const Potential P = potential_of(seed.g);
  const auto seed_annuli = annuli(P);

  double reach = 0.0;
  for (const auto& w : cert.windows)
    for (double z : w.zeros) {
      const auto [a, b] = turning_points(P, seed_annuli[static_cast<std::size_t>(w.annulus_id)], z);
      reach = std::max({reach, std::abs(a), std::abs(b)});
    }
  for (const auto& c : P.critical) reach = std::max(reach, std::abs(c.x));
  const double x_star = 1.1 * reach;
  const double shift = x0.value_or(-x_star - 1.0);
  if (!(shift < -x_star * (1.0 + 1e-12))) throw DomainError("shift too small");

  ConstructedSystem out;
  out.x0 = shift;
  out.F = compose_square_shift(seed.F, shift);
  const Polynomial G2 = compose_square_shift(P.G, shift) - Polynomial::constant(P.G(shift));
  out.g = differentiate(G2);
  out.certificate.n = 2 * cert.n + 1;
  out.certificate.m = 2 * cert.m + 1;
  out.certificate.epsilon0 = cert.epsilon0;
  out.certificate.provenance.kind = Provenance::Kind::doubled;
  out.certificate.provenance.x0 = shift;
  out.certificate.provenance.parent = std::make_shared<const Provenance>(cert.provenance);

  const Potential P2 = potential_from_G(G2);
  const auto doubled_annuli = annuli(P2);
  const double drop = P.G(shift);
  int total = 0;
  for (const auto& w : cert.windows) {
    if (w.zeros.empty()) continue;
    const double center = seed_annuli[static_cast<std::size_t>(w.annulus_id)].center_x;
    std::vector<double> expected;
    for (double z : w.zeros) expected.push_back(z - drop);
    for (double side : {-1.0, 1.0}) {
      const auto& A2 = annulus_near(doubled_annuli, side * std::sqrt(center - shift));
      const auto [lo, hi] = clip_window(A2, w.h_lo - drop, w.h_hi - drop, expected);
      const auto prof = profile(out.F, P2, A2, lo, hi, kProfilePoints, exec);
      if (prof.zeros.size() != w.zeros.size())
        throw DomainError("doubling: well around x = " + std::to_string(A2.center_x) + " shows " +
                          std::to_string(prof.zeros.size()) + " zeros, expected " + std::to_string(w.zeros.size()));
      HWindow mirrored{A2.id, lo, hi, {}};
      for (const auto& z : prof.zeros) mirrored.zeros.push_back(z.h);
      total += static_cast<int>(mirrored.zeros.size());
      out.certificate.windows.push_back(std::move(mirrored));
    }
  }
  out.certificate.k = total;
  return out;
}

std::vector<double> solve_placement(const std::vector<std::vector<double>>& basis, double b0) {
  const auto q = static_cast<Eigen::Index>(basis.size());
  if (q == 0) return {b0};
  Eigen::MatrixXd A(q, q);
  Eigen::VectorXd rhs(q);
  for (Eigen::Index i = 0; i < q; ++i) {
    const auto& row = basis[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != q + 1) throw DomainError("solve_placement: ragged basis");
    rhs(i) = -b0 * row[0];
    for (Eigen::Index j = 0; j < q; ++j) A(i, j) = row[static_cast<std::size_t>(j + 1)];
  }
  Eigen::VectorXd scale(q);
  for (Eigen::Index j = 0; j < q; ++j) {
    scale(j) = A.col(j).cwiseAbs().maxCoeff();
    if (!(scale(j) > 0.0) || !std::isfinite(scale(j))) throw DomainError("degenerate targets");
    A.col(j) /= scale(j);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  lu.setThreshold(1e-12);
  if (lu.rank() < q) throw DomainError("degenerate targets");
  const Eigen::VectorXd y = lu.solve(rhs);
  std::vector<double> b{b0};
  for (Eigen::Index j = 0; j < q; ++j) b.push_back(y(j) / scale(j));
  return b;
}

Placement place_outer_zeros(const Potential& P2, int q, double h_star,
                            const std::optional<std::vector<double>>& targets, double b0, Exec exec) {
  if (q < 1) throw DomainError("placement: q must be at least 1");
  if (!P2.coercive || !P2.G.is_even()) throw DomainError("placement: potential must be even and coercive");
  const auto P2_annuli = annuli(P2);
  const auto& A = outer_annulus(P2_annuli);
  if (!(h_star > A.h_min)) throw DomainError("placement: h_star must exceed the critical energies");

  Placement out;
  if (targets) {
    out.targets = *targets;
  } else {
    for (int i = 1; i <= q; ++i) out.targets.push_back(h_star * std::pow(4.0, i));
  }
  if (static_cast<int>(out.targets.size()) != q) throw DomainError("placement: need exactly q targets");
  for (std::size_t i = 0; i < out.targets.size(); ++i) {
    if (!(out.targets[i] > h_star) || (i > 0 && !(out.targets[i] > out.targets[i - 1])))
      throw DomainError("placement: targets must ascend strictly above h_star");
  }

  std::vector<std::vector<double>> basis(static_cast<std::size_t>(q));
  for_each_index(static_cast<std::size_t>(q), exec, [&](std::size_t i) {
    basis[i].resize(static_cast<std::size_t>(q) + 1);
    for (int j = 0; j <= q; ++j) basis[i][static_cast<std::size_t>(j)] = abelian_integral(P2, A, j, out.targets[i]);
  });
  out.b = solve_placement(basis, b0);
  for (std::size_t j = 0; j + 1 < out.b.size(); ++j)
    if (!(out.b[j] * out.b[j + 1] < 0.0)) out.alternating = false;

  out.verification = profile(odd_perturbation(out.b), P2, A, h_star, 4.0 * out.targets.back(), kProfilePoints, exec);
  const auto& zeros = out.verification.zeros;
  bool ok = static_cast<int>(zeros.size()) == q;
  for (std::size_t i = 0; ok && i < zeros.size(); ++i)
    ok = std::abs(zeros[i].h - out.targets[i]) <= 1e-3 * out.targets[i];
  if (!ok)
    throw DomainError("placement failed: " + std::to_string(zeros.size()) + " sign changes for " + std::to_string(q) +
                      " targets");
  return out;
}

std::vector<double> select_perturbation_coefficients(const Potential& P2, int q, double h_star,
                                                     const std::optional<std::vector<double>>& targets,
                                                     double b0) {
  return place_outer_zeros(P2, q, h_star, targets, b0).b;
}

ZCertificate compose_certificate(const ZCertificate& seed, Parity parity) {
  const int extra = parity == Parity::even ? 1 : 0;
  ZCertificate c;
  c.n = 2 * seed.n + 1 + extra;
  c.m = 2 * seed.m + 1;
  c.k = 2 * seed.k + seed.n + extra;
  c.epsilon0 = 1.0;
  c.provenance.kind = Provenance::Kind::composed;
  c.provenance.parity = parity;
  c.provenance.parent = std::make_shared<const Provenance>(seed.provenance);
  return c;
}

ConstructedSystem compose_step(const ConstructedSystem& seed, Parity parity, const ComposeOptions& options) {
  const ZCertificate& cert = seed.certificate;
  const ConstructedSystem doubled = doubling_transform(seed, options.x0, options.exec);
  const int q = parity == Parity::odd ? cert.n : cert.n + 1;

  const Potential P2 = potential_of(doubled.g);
  const auto all = annuli(P2);
  const auto& outer = outer_annulus(all);
  const double h_star = 10.0 * max_abs_critical_energy(P2);
  const Placement placement = place_outer_zeros(P2, q, h_star, std::nullopt, options.b0, options.exec);

  const double lambda = options.lambda.value_or(0.1 * cert.epsilon0);
  if (!(lambda > 0.0) || !(options.mu_ratio > 0.0))
    throw DomainError("compose_step: lambda and mu must be positive");

  ConstructedSystem out;
  out.lambda = lambda;
  out.b = placement.b;
  out.x0 = doubled.x0;
  out.g = doubled.g;
  out.certificate = compose_certificate(cert, parity);
  out.certificate.provenance.x0 = doubled.x0;

  // The odd part leaves the outer zeros alone but can swamp the mirrored
  // wells, so μ/λ drops by decades until every window keeps its zeros.
  double ratio = options.mu_ratio;
  std::string failure;
  for (int attempt = 0; attempt <= options.max_mu_shrinks; ++attempt, ratio *= 0.1) {
    out.mu = lambda * ratio;
    out.F = lambda * doubled.F + out.mu * odd_perturbation(placement.b);
    out.certificate.windows = doubled.certificate.windows;
    HWindow outer_window{outer.id, h_star, 4.0 * placement.targets.back(), {}};
    for (const auto& z : placement.verification.zeros) outer_window.zeros.push_back(z.h);
    out.certificate.windows.push_back(outer_window);

    failure.clear();
    for (auto& w : out.certificate.windows) {
      const auto prof = profile(out.F, P2, all[static_cast<std::size_t>(w.annulus_id)], w.h_lo, w.h_hi,
                                kProfilePoints, options.exec);
      if (prof.zeros.size() != w.zeros.size()) {
        failure = "annulus " + std::to_string(w.annulus_id) + " shows " + std::to_string(prof.zeros.size()) +
                  " zeros of M, expected " + std::to_string(w.zeros.size());
        break;
      }
      w.zeros.clear();
      for (const auto& z : prof.zeros) w.zeros.push_back(z.h);
    }
    if (failure.empty()) break;
  }
  if (!failure.empty()) throw DomainError("compose_step: " + failure);
  if (out.certificate.recorded_zeros() != out.certificate.k)
    throw DomainError("compose_step: realized " + std::to_string(out.certificate.recorded_zeros()) +
                      " zeros, certificate claims " + std::to_string(out.certificate.k));

  const int deg_g = out.g.degree().value_or(0);
  const int deg_F = out.F.degree().value_or(0);
  if (deg_g > 2 * cert.m + 1 || !out.g.is_odd()) throw DomainError("compose_step: g lost its degree bound or oddness");
  if ((parity == Parity::odd && deg_F > 2 * cert.n + 2) || (parity == Parity::even && deg_F != 2 * cert.n + 3))
    throw DomainError("compose_step: deg F = " + std::to_string(deg_F) + " violates the degree bookkeeping");
  return out;
}

ZCertificate weaken_certificate(const ZCertificate& c, int n_new, int m_new) {
  if (n_new < c.n || m_new < c.m) throw DomainError("weaken_certificate: degrees can only grow");
  ZCertificate out = c;
  if (n_new == c.n && m_new == c.m) return out;
  out.n = n_new;
  out.m = m_new;
  out.provenance = Provenance{};
  out.provenance.kind = Provenance::Kind::weakened;
  out.provenance.parent = std::make_shared<const Provenance>(c.provenance);
  return out;
}

RecursionPlan::RecursionPlan(Triple seed, int depth) : seed_(seed), depth_(depth) {
  if (seed.n < 1 || seed.m < 1 || seed.k < 0) throw DomainError("plan_recursion: seed needs n, m >= 1 and k >= 0");
  if (depth < 1 || depth > 30) throw DomainError("plan_recursion: depth must lie in [1, 30]");
  // Largest node is n_{p,2^p} = 2^p (n0 + 2) - 2; keep k well inside int64.
  if (seed.n > (std::int64_t{1} << 30) || seed.m > (std::int64_t{1} << 30) || seed.k > (std::int64_t{1} << 30))
    throw DomainError("plan_recursion: seed too large for 64-bit bookkeeping");
}

Triple RecursionPlan::node(int level, std::int64_t index) const {
  if (level < 1 || level > depth_) throw DomainError("plan: level out of range");
  if (index < 1 || index > (std::int64_t{1} << level)) throw DomainError("plan: index out of range");
  Triple t = seed_;
  const std::int64_t path = index - 1;
  for (int step = level - 1; step >= 0; --step) {
    const std::int64_t bit = (path >> step) & 1;
    t.k = 2 * t.k + t.n + bit;
    t.n = 2 * t.n + 1 + bit;
    t.m = 2 * t.m + 1 + bit;
  }
  return t;
}

std::vector<Triple> RecursionPlan::level(int level) const {
  if (level > 24) throw DomainError("plan: refusing to materialize more than 2^24 nodes");
  const std::int64_t count = std::int64_t{1} << level;
  std::vector<Triple> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 1; i <= count; ++i) out.push_back(node(level, i));
  return out;
}

Triple RecursionPlan::certificate(int level, std::int64_t i, std::int64_t j) const {
  const Triple row = node(level, i);
  return {row.n, node(level, j).m, row.k};
}

RecursionPlan plan_recursion(Triple seed, int depth) { return RecursionPlan(seed, depth); }

ConstructedSystem realize_plan(const ConstructedSystem& seed, const std::vector<Parity>& parity_path,
                               const ComposeOptions& options) {
  if (parity_path.empty() || parity_path.size() > 2) throw DomainError("realize_plan: depth must be 1 or 2");
  ConstructedSystem current = seed;
  for (Parity parity : parity_path) current = compose_step(current, parity, options);
  return current;
}

}  // namespace lienard
