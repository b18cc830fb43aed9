#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lienard/bounds.hpp"
#include "lienard/error.hpp"

using namespace lienard;

namespace {

bool has_certificate(const std::vector<ZCertificate>& list, int n, int m, int k) {
  return std::any_of(list.begin(), list.end(),
                     [&](const ZCertificate& c) { return c.n == n && c.m == m && c.k == k; });
}

// Independent rational sums for the two intercept families.
Rational delta_sum(int p) {
  Rational s(3 * (std::int64_t{1} << (p - 1)));
  for (int j = 2; j <= p; ++j) s += Rational(j + 1) * Rational(std::int64_t{1} << (p - j));
  return s;
}

Rational beta_sum(int p) {
  Rational s(3 * (std::int64_t{1} << (p - 1)));
  for (int j = 2; j <= p; ++j) s += Rational(3 * j + 4, 3) * Rational(std::int64_t{1} << (p - j));
  return s;
}

const std::vector<BoundRecord>& table64() {
  static const std::vector<BoundRecord> t = bounds_table(64, 64);
  return t;
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("registry certificates from the four families") {
    CHECK(has_certificate(lemma21_certificates(3, 3), 3, 3, 5));
    CHECK(has_certificate(lemma21_certificates(2, 3), 2, 3, 5));
    CHECK(has_certificate(lemma21_certificates(1, 1), 1, 1, 0));
    CHECK(has_certificate(lemma21_certificates(18, 4), 18, 4, 19));
    CHECK_FALSE(has_certificate(lemma21_certificates(19, 4), 19, 4, 20));
    CHECK_FALSE(has_certificate(lemma21_certificates(9, 3), 9, 3, 10));
    for (const auto& c : lemma21_certificates(20, 5)) {
      CHECK(c.n <= 20);
      CHECK(c.m <= 4);
      CHECK_FALSE(c.provenance.label.empty());
      CHECK(c.windows.empty());
    }
    CHECK(lemma21_best(3, 3) == 5);
    CHECK(lemma21_best(0, 3) == 0);
  }

  TEST_CASE("thm31") {
    CHECK(thm31_bound(9, 3).bound == 8.0);
    CHECK(thm31_bound(3, 3).bound == 1.0);
    CHECK(thm31_bound(7, 5).bound == 7.0);
    CHECK(thm31_bound(13, 6).bound == 14.0);
    CHECK_THROWS_AS(thm31_bound(9, 2), DomainError);
    CHECK_THROWS_AS(thm31_bound(9, 7), DomainError);
    CHECK_THROWS_AS(thm31_bound(2, 3), DomainError);
  }

  TEST_CASE("slopes and intercepts") {
    CHECK(l_p(2) == Rational(3, 2));
    CHECK(r_p(2) == Rational(5, 3));
    CHECK(delta_p(1) == Rational(3));
    CHECK(delta_p(2) == Rational(9));
    CHECK(delta_p(3) == Rational(22));
    CHECK(beta_p(2) == Rational(28, 3));
    CHECK_THROWS_AS(delta_p(0), DomainError);
  }

  TEST_CASE("intercept closed sums equal their recursions and the bound on delta") {
    for (int p = 1; p <= 20; ++p) {
      CHECK(delta_p(p) == delta_sum(p));
      CHECK(beta_p(p) == beta_sum(p));
      CHECK(delta_p(p) == delta_p_recursive(p));
      CHECK(beta_p(p) == beta_p_recursive(p));
      const std::int64_t cap = (p + 4) * (std::int64_t{1} << (p - 1)) - (p + 1);
      CHECK(delta_p(p) <= Rational(cap));
    }
  }

  TEST_CASE("thm32") {
    const BoundRecord r = thm32_bound(10, 7);
    CHECK(r.bound == 6.0);
    CHECK(r.ceiling() == 6);
    CHECK(r.source == BoundSource::thm32_s1);
    CHECK(r.params.at("p") == 2.0);
    CHECK(r.params.at("j") == 1.0);
    // m = 11 = 3·4 − 2 + 1 sits on the second branch.
    const BoundRecord s = thm32_bound(20, 11);
    CHECK(s.source == BoundSource::thm32_s2);
    CHECK(s.bound == doctest::Approx(5.0 / 3.0 * 20.0 - 28.0 / 3.0));
    CHECK_THROWS_AS(thm32_bound(6, 7), DomainError);
    CHECK_THROWS_AS(thm32_bound(10, 6), DomainError);
  }

  TEST_CASE("sequence examples") {
    CHECK(seq_closed_form({3, 3, 5}, 1, 1) == Triple{7, 7, 13});
    CHECK(seq_closed_form({3, 3, 5}, 2, 1).k == 33);
    CHECK(seq_recursive({3, 3, 5}, 2, 1).k == 33);
    CHECK(seq_closed_form({3, 3, 5}, 2, 4).k == 37);
    CHECK_THROWS_AS(seq_closed_form({3, 3, 5}, 2, 2), DomainError);
    CHECK_THROWS_AS(seq_recursive({3, 3, 5}, 2, 5), DomainError);
  }

  TEST_CASE("closed form equals recursion for all p up to 20") {
    for (const Triple seed : {Triple{1, 1, 0}, Triple{2, 2, 1}, Triple{3, 3, 5}}) {
      for (int p = 1; p <= 20; ++p) {
        const std::int64_t top = std::int64_t{1} << p;
        CHECK(seq_closed_form(seed, p, 1) == seq_recursive(seed, p, 1));
        CHECK(seq_closed_form(seed, p, top) == seq_recursive(seed, p, top));
      }
    }
  }

  TEST_CASE("S membership") {
    CHECK(s_membership(7, 3) == std::pair<int, std::int64_t>{1, 1});
    CHECK(s_membership(12, 2) == std::pair<int, std::int64_t>{2, 2});
    CHECK_FALSE(s_membership(2, 3).has_value());
    for (std::int64_t m0 = 1; m0 <= 16; ++m0)
      for (std::int64_t m = 1; m <= 600; ++m) {
        const auto hit = s_membership(m, m0);
        if (!hit) continue;
        const auto [i, j] = *hit;
        CHECK(j >= 1);
        CHECK(j <= (std::int64_t{1} << i));
        CHECK((std::int64_t{1} << i) * (m0 + 1) - 2 + j == m);
      }
  }

  TEST_CASE("partition of the integers above M") {
    CHECK(partition_check(1, 1000));
    CHECK(partition_check(8, 10000));
    CHECK(partition_check(3, 2));
    for (std::int64_t M = 1; M <= 64; ++M) CHECK(partition_check(M, 10000));
    for (std::int64_t m = 1; m <= 10000; ++m) CHECK((s_membership(m, 1) || s_membership(m, 2)));
  }

  TEST_CASE("thm41 reads the composition tree") {
    const BoundRecord r = thm41_bound({3, 3, 5}, 1, 1, 2);
    CHECK(r.n == 7);
    CHECK(r.m == 8);
    CHECK(r.bound == 13.0);
    CHECK(r.source == BoundSource::thm41);
  }

  TEST_CASE("thm42 and thm43") {
    const BoundRecord r7 = thm42_bound(7);
    CHECK(r7.ceiling() == 13);
    CHECK(r7.bound == doctest::Approx(13.0).epsilon(1e-12));
    CHECK(r7.params.at("k0") == 5.0);
    CHECK(r7.params.at("m0") == 3.0);
    CHECK(N(3, 5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(thm42_bound(3).bound == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(thm43_bound(6).bound == doctest::Approx(8.0 - 8.0 / 3.0 * (1.0 + std::log(3.0) / std::log(2.0)) + 1.0));
    CHECK(thm43_bound(6).bound == doctest::Approx(2.106767).epsilon(1e-6));
    CHECK_THROWS_AS(thm43_bound(2), DomainError);
  }

  TEST_CASE("thm51 and thm52") {
    const BoundRecord fb = thm51_bound(15, 2, SeedPolicy::fallback);
    CHECK(fb.bound == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(fb.n == 13);
    CHECK(fb.m == 15);
    CHECK(thm51_bound(15, 2).bound >= fb.bound);
    CHECK(thm52_bound(7).bound == doctest::Approx(13.0).epsilon(1e-12));
    CHECK(thm52_bound(7).n == 6);
    CHECK(thm52_bound(6).bound == thm43_bound(6).bound);
    CHECK_THROWS_AS(thm51_bound(15, 0), DomainError);
  }

  TEST_CASE("fallback intercepts reproduce the displayed lower bounds") {
    const double two_ln2 = 2.0 * std::log(2.0);
    for (int k = 2; k <= 64; ++k)
      for (int r = 1; r <= 8; ++r) {
        const auto [B, Bbar] = thm51_intercepts(k, r, 0);
        const double want = -((1.0 + r / 2) / k + std::log(static_cast<double>(k)) / two_ln2);
        const double want_bar = -((2.0 + r / 2) / (k + 1.0) + std::log(k + 1.0) / two_ln2);
        CHECK(std::abs(B - want) <= 1e-14);
        CHECK(std::abs(Bbar - want_bar) <= 1e-14);
      }
  }

  TEST_CASE("best bound examples") {
    const BoundRecord b33 = best_bound(3, 3);
    CHECK(b33.ceiling() == 5);
    CHECK(b33.source == BoundSource::lemma21);
    const BoundRecord b77 = best_bound(7, 7);
    CHECK(b77.ceiling() == 13);
    CHECK(b77.source == BoundSource::thm42);
    const BoundRecord b93 = best_bound(9, 3);
    CHECK(b93.ceiling() == 9);
    CHECK(b93.source == BoundSource::registry);
    CHECK(b93.n == 9);
    CHECK(b93.m == 3);
    CHECK(best_bound(1, 1).ceiling() == 0);
    CHECK_THROWS_AS(best_bound(0, 3), DomainError);
  }

  TEST_CASE("best bound is monotone in both degrees") {
    const auto& t = table64();
    REQUIRE(t.size() == 64u * 64u);
    for (int n = 1; n <= 64; ++n)
      for (int m = 1; m <= 64; ++m) {
        const auto& r = t[static_cast<std::size_t>((n - 1) * 64 + (m - 1))];
        CHECK(r.n == n);
        CHECK(r.m == m);
        CHECK(std::isfinite(r.bound));
        if (n > 1) CHECK(r.ceiling() >= t[static_cast<std::size_t>((n - 2) * 64 + (m - 1))].ceiling());
        if (m > 1) CHECK(r.ceiling() >= t[static_cast<std::size_t>((n - 1) * 64 + (m - 2))].ceiling());
      }
  }

  TEST_CASE("asymptotic ratio") {
    CHECK(asymptotic_ratio(7) == doctest::Approx(13.0 / (9.0 * std::log(9.0))).epsilon(1e-12));
    CHECK(asymptotic_ratio(3) == doctest::Approx(5.0 / (5.0 * std::log(5.0))).epsilon(1e-12));
    double prev = 0.0;
    for (int p = 1; p <= 10; ++p) {
      const double r = asymptotic_ratio((1 << (p + 1)) - 1);
      CHECK(r > prev);
      CHECK(r < 1.0 / (2.0 * std::log(2.0)));
      prev = r;
    }
  }

  TEST_CASE("source names") {
    CHECK(to_string(BoundSource::registry) == "Registry§1");
    CHECK(to_string(BoundSource::thm32_s2) == "Thm3.2-S2");
    CHECK(to_string(BoundSource::thm52) == "Thm5.2");
  }
}
