#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lienard/constructor.hpp"
#include "lienard/error.hpp"

using namespace lienard;

namespace {

bool odd_coefficients_only(const Polynomial& p) {
  for (std::size_t i = 0; i < p.coeffs().size(); i += 2)
    if (p.coeffs()[i] != 0.0) return false;
  return true;
}

double max_abs_critical_energy(const Potential& P) {
  double out = 0.0;
  for (const auto& c : P.critical) out = std::max(out, std::abs(c.energy));
  return out;
}

const HWindow* window_on(const ZCertificate& c, int annulus_id) {
  for (const auto& w : c.windows)
    if (w.annulus_id == annulus_id) return &w;
  return nullptr;
}

}  // namespace

TEST_SUITE("constructor") {
  TEST_CASE("van der Pol seed is a realized Z(2,1,1)") {
    const ConstructedSystem seed = van_der_pol_seed();
    CHECK(seed.certificate.n == 2);
    CHECK(seed.certificate.m == 1);
    CHECK(seed.certificate.k == 1);
    CHECK(seed.certificate.realized());
    REQUIRE(seed.certificate.windows.size() == 1);
    CHECK(std::abs(seed.certificate.windows[0].zeros[0] - 2.0) <= 1e-6);
    CHECK(seed.certificate.epsilon0 > 0.0);
  }

  TEST_CASE("parity names") {
    CHECK(parse_parity("odd") == Parity::odd);
    CHECK(parse_parity("even") == Parity::even);
    CHECK(to_string(Parity::even) == "even");
    CHECK_THROWS_AS(parse_parity("both"), DomainError);
  }

  TEST_CASE("doubling at x0 = -3.5 gives the substituted polynomials") {
    const ConstructedSystem two = doubling_transform(van_der_pol_seed(), -3.5);
    const double a = -3.5;
    const Polynomial F2({a * a * a / 3.0 - a, 0.0, a * a - 1.0, 0.0, a, 0.0, 1.0 / 3.0});
    REQUIRE(two.F.coeffs().size() == 7);
    for (std::size_t i = 0; i < 7; ++i) CHECK(two.F.coeff(i) == doctest::Approx(F2.coeff(i)).epsilon(1e-14));
    CHECK(two.g == Polynomial({0.0, -7.0, 0.0, 2.0}));
    CHECK(two.x0 == -3.5);
    CHECK(two.certificate.n == 5);
    CHECK(two.certificate.m == 3);
    CHECK(two.certificate.k == 2);
    CHECK(two.certificate.realized());
    CHECK(two.certificate.provenance.kind == Provenance::Kind::doubled);
    REQUIRE(two.certificate.provenance.parent);
    CHECK(two.certificate.provenance.parent->kind == Provenance::Kind::seed);

    const auto wells = annuli(potential_of(two.g));
    CHECK(wells[0].center_x == doctest::Approx(-std::sqrt(3.5)).epsilon(1e-12));
    CHECK(wells[1].center_x == doctest::Approx(std::sqrt(3.5)).epsilon(1e-12));
    // Seed zero h = 2 moves to 2 − G(x0) = 2 − 6.125.
    for (const auto& w : two.certificate.windows) {
      REQUIRE(w.zeros.size() == 1);
      CHECK(w.zeros[0] == doctest::Approx(2.0 - 6.125).epsilon(1e-6));
    }
  }

  TEST_CASE("auto shift and the shift guard") {
    const ConstructedSystem two = doubling_transform(van_der_pol_seed());
    REQUIRE(two.x0.has_value());
    CHECK(*two.x0 == doctest::Approx(-3.2).epsilon(1e-9));
    CHECK_THROWS_WITH_AS(doubling_transform(van_der_pol_seed(), -2.0), "shift too small", DomainError);
    CHECK_THROWS_WITH_AS(doubling_transform(van_der_pol_seed(), -2.2), "shift too small", DomainError);
  }

  TEST_CASE("doubling a seed without zeros is vacuous") {
    ConstructedSystem empty;
    empty.F = Polynomial({0.0, 1.0});
    empty.g = Polynomial::monomial(1);
    empty.certificate.n = 1;
    empty.certificate.m = 1;
    empty.certificate.k = 0;
    const ConstructedSystem two = doubling_transform(empty, -2.0);
    CHECK(two.certificate.k == 0);
    CHECK(two.certificate.windows.empty());
    CHECK(two.certificate.n == 3);
    CHECK(two.certificate.m == 3);
  }

  TEST_CASE("wells of a doubled system carry opposite Melnikov profiles") {
    const ConstructedSystem two = doubling_transform(van_der_pol_seed(), -3.5);
    const Potential P = potential_of(two.g);
    const auto all = annuli(P);
    CHECK(all[0].h_min == doctest::Approx(all[1].h_min).epsilon(1e-12));
    CHECK(all[0].center_x == doctest::Approx(-all[1].center_x).epsilon(1e-12));
    const double lo = all[0].h_min + 0.05, hi = all[0].h_max - 0.05;
    const auto left = profile(two.F, P, all[0], lo, hi, 32);
    const auto right = profile(two.F, P, all[1], lo, hi, 32);
    REQUIRE(left.values.size() == right.values.size());
    for (std::size_t i = 0; i < left.values.size(); ++i)
      CHECK(std::abs(left.values[i] + right.values[i]) <= 1e-9 * (1.0 + std::abs(right.values[i])));
  }

  TEST_CASE("single-target placement on the harmonic potential") {
    const Potential hx = potential_of(Polynomial::monomial(1));
    const auto b = select_perturbation_coefficients(hx, 1, 1.0, std::vector<double>{2.0}, 1.0);
    REQUIRE(b.size() == 2);
    CHECK(b[0] == 1.0);
    // I₀(2) = −4π and I₁(2) = −12π on the circle.
    CHECK(b[1] == doctest::Approx(-1.0 / 3.0).epsilon(1e-9));
  }

  TEST_CASE("placement rejects singular systems and bad targets") {
    CHECK_THROWS_WITH_AS(solve_placement({{1.0, 0.0}}, 1.0), "degenerate targets", DomainError);
    CHECK_THROWS_WITH_AS(solve_placement({{1.0, 2.0, 3.0}, {2.0, 4.0, 6.0}}, 1.0), "degenerate targets",
                         DomainError);
    const auto b = solve_placement({{-1.0, 2.0}}, 1.0);
    REQUIRE(b.size() == 2);
    CHECK(b[1] == doctest::Approx(0.5));

    const Potential dw = potential_of(Polynomial({0.0, -7.0, 0.0, 2.0}));
    CHECK_THROWS_AS(place_outer_zeros(dw, 2, 10.0, std::vector<double>{200.0, 50.0}, 1.0), DomainError);
    CHECK_THROWS_AS(place_outer_zeros(dw, 2, 10.0, std::vector<double>{50.0}, 1.0), DomainError);
    CHECK_THROWS_AS(place_outer_zeros(potential_of(Polynomial({1.0, 1.0})), 1, 10.0, std::nullopt, 1.0),
                    DomainError);
  }

  TEST_CASE("auto placement alternates in sign and lands on its targets") {
    const Potential dw = potential_of(Polynomial({0.0, -7.0, 0.0, 2.0}));
    const Placement pl = place_outer_zeros(dw, 3, 61.25, std::nullopt, 1.0);
    REQUIRE(pl.targets.size() == 3);
    CHECK(pl.targets[0] == doctest::Approx(245.0));
    CHECK(pl.targets[2] == doctest::Approx(61.25 * 64.0));
    CHECK(pl.alternating);
    REQUIRE(pl.verification.zeros.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(std::abs(pl.verification.zeros[i].h - pl.targets[i]) <= 1e-3 * pl.targets[i]);
  }

  TEST_CASE("certificate arithmetic of one composition") {
    ZCertificate seed;
    seed.n = 3;
    seed.m = 3;
    seed.k = 5;
    const auto odd = compose_certificate(seed, Parity::odd);
    CHECK(odd.n == 7);
    CHECK(odd.m == 7);
    CHECK(odd.k == 13);
    const auto even = compose_certificate(seed, Parity::even);
    CHECK(even.n == 8);
    CHECK(even.k == 14);
    CHECK(even.provenance.kind == Provenance::Kind::composed);
  }

  TEST_CASE("odd composition of van der Pol realizes Z(5,3,4)") {
    const ConstructedSystem seed = van_der_pol_seed();
    const ConstructedSystem out = compose_step(seed, Parity::odd);
    const ZCertificate& c = out.certificate;
    CHECK(c.n == 5);
    CHECK(c.m == 3);
    CHECK(c.k == 4);
    CHECK(c.realized());
    CHECK(out.F.degree().value_or(0) <= 6);
    CHECK(out.g.degree() == 3);
    CHECK(out.g.is_odd());
    CHECK(odd_coefficients_only(out.g));
    CHECK(out.lambda == doctest::Approx(0.1 * seed.certificate.epsilon0));
    CHECK(out.mu > 0.0);
    CHECK(out.mu < out.lambda);
    REQUIRE(out.b.size() == 3);
    CHECK(out.b[0] == 1.0);

    const Potential P = potential_of(out.g);
    const auto all = annuli(P);
    REQUIRE(all.size() == 3);
    const HWindow* left = window_on(c, all[0].id);
    const HWindow* right = window_on(c, all[1].id);
    const HWindow* outer = window_on(c, all[2].id);
    REQUIRE(left);
    REQUIRE(right);
    REQUIRE(outer);
    CHECK(left->zeros.size() == 1);
    CHECK(right->zeros.size() == 1);
    REQUIRE(outer->zeros.size() == 2);
    const double h_star = 10.0 * max_abs_critical_energy(P);
    CHECK(std::abs(outer->zeros[0] - 4.0 * h_star) <= 1e-3 * 4.0 * h_star);
    CHECK(std::abs(outer->zeros[1] - 16.0 * h_star) <= 1e-3 * 16.0 * h_star);
    CHECK(c.provenance.parity == Parity::odd);
  }

  TEST_CASE("even composition of van der Pol realizes Z(6,3,5)") {
    const ConstructedSystem out = compose_step(van_der_pol_seed(), Parity::even);
    CHECK(out.certificate.n == 6);
    CHECK(out.certificate.m == 3);
    CHECK(out.certificate.k == 5);
    CHECK(out.certificate.realized());
    CHECK(out.F.degree() == 7);
    CHECK(out.g.is_odd());
  }

  TEST_CASE("composition rejects non-positive scales") {
    ComposeOptions o;
    o.lambda = 0.0;
    CHECK_THROWS_AS(compose_step(van_der_pol_seed(), Parity::odd, o), DomainError);
  }

  TEST_CASE("realize_plan at depth one and two") {
    const auto one = realize_plan(van_der_pol_seed(), {Parity::even});
    CHECK(one.certificate.k == 5);
    const auto two = realize_plan(van_der_pol_seed(), {Parity::odd, Parity::odd});
    CHECK(two.certificate.n == 11);
    CHECK(two.certificate.m == 7);
    CHECK(two.certificate.k == 13);
    CHECK(two.certificate.realized());
    CHECK(two.g.degree() == 7);
    CHECK(two.g.is_odd());
    CHECK(two.F.degree().value_or(0) <= 12);
    CHECK_THROWS_AS(realize_plan(van_der_pol_seed(), {}), DomainError);
    CHECK_THROWS_AS(realize_plan(van_der_pol_seed(), {Parity::odd, Parity::odd, Parity::odd}), DomainError);
  }

  TEST_CASE("weakening only loosens degrees") {
    ZCertificate c;
    c.n = 5;
    c.m = 3;
    c.k = 4;
    const auto w = weaken_certificate(c, 5, 4);
    CHECK(w.n == 5);
    CHECK(w.m == 4);
    CHECK(w.k == 4);
    CHECK(w.provenance.kind == Provenance::Kind::weakened);
    const auto same = weaken_certificate(c, 5, 3);
    CHECK(same.n == 5);
    CHECK(same.m == 3);
    CHECK(same.k == 4);
    CHECK_THROWS_AS(weaken_certificate(c, 4, 3), DomainError);
    CHECK_THROWS_AS(weaken_certificate(c, 5, 2), DomainError);
  }

  TEST_CASE("recursion plan nodes") {
    const RecursionPlan plan = plan_recursion({3, 3, 5}, 2);
    const auto leaves = plan.level(1);
    REQUIRE(leaves.size() == 2);
    CHECK(leaves[0] == Triple{7, 7, 13});
    CHECK(leaves[1] == Triple{8, 8, 14});
    CHECK(plan.node(2, 1) == Triple{15, 15, 33});
    CHECK(plan.node(2, 4).k == 37);
    CHECK(plan.certificate(1, 1, 2) == Triple{7, 8, 13});
    CHECK(plan_recursion({1, 1, 0}, 1).node(1, 1).k == 1);
    CHECK_THROWS_AS(plan.node(3, 1), DomainError);
    CHECK_THROWS_AS(plan.node(1, 3), DomainError);
    CHECK_THROWS_AS(plan_recursion({3, 3, 5}, 31), DomainError);
    CHECK_THROWS_AS(plan_recursion({3, 3, 5}, 0), DomainError);
  }

  TEST_CASE("plan matches closed forms and orders k strictly") {
    for (const Triple seed : {Triple{1, 1, 0}, Triple{2, 2, 1}, Triple{3, 3, 5}}) {
      const RecursionPlan plan = plan_recursion(seed, 20);
      for (int p = 1; p <= 20; ++p) {
        const std::int64_t two_p = std::int64_t{1} << p;
        for (std::int64_t i : {std::int64_t{1}, two_p}) {
          const Triple t = plan.node(p, i);
          CHECK(t.n == two_p * (seed.n + 1) - 2 + i);
          CHECK(t.m == two_p * (seed.m + 1) - 2 + i);
        }
        CHECK(plan.node(p, 1).k == two_p * (seed.k - 1) + p * (two_p / 2) * (seed.n + 1) + 1);
        CHECK(plan.node(p, two_p).k == two_p * (seed.k - 1) + p * (two_p / 2) * (seed.n + 2) + 1);
      }
      for (int p = 1; p <= 12; ++p) {
        const auto level = plan.level(p);
        for (std::size_t i = 1; i < level.size(); ++i) CHECK(level[i].k > level[i - 1].k);
      }
    }
  }
}
