#include <doctest.h>

#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>

#include "charsum/characters.hpp"

using namespace charsum;

namespace {

u64 brute_conductor(const DirichletCharacter& chi) {
  const u64 q = chi.modulus();
  for (u64 f : divisors(q)) {
    bool ok = true;
    for (u64 n = 1; n < q && ok; n += f)
      if (std::gcd(n, q) == 1 && chi(n).exponent != 0) ok = false;
    if (ok) return f;
  }
  return q;
}

u64 brute_order(const DirichletCharacter& chi) {
  const u64 q = chi.modulus();
  u64 o = 1;
  for (u64 n = 1; n < q; ++n) {
    const CharValue v = chi(n);
    if (!v.is_zero()) o = std::lcm(o, v.order / std::gcd(v.order, v.exponent));
  }
  return o;
}

}  // namespace

TEST_CASE("group construction") {
  auto g5 = build_group(5);
  REQUIRE(g5->rank() == 1);
  CHECK(g5->components()[0].order == 4);
  auto g8 = build_group(8);
  REQUIRE(g8->rank() == 2);
  CHECK(g8->components()[0].order == 2);
  CHECK(g8->components()[1].order == 2);
  auto g12 = build_group(12);
  REQUIRE(g12->rank() == 2);
  CHECK(g12->components()[0].order == 2);
  CHECK(g12->components()[1].order == 2);
  CHECK_THROWS_AS(build_group(2), std::invalid_argument);

  for (u64 q = 3; q <= 400; ++q) {
    auto g = build_group(q);
    CHECK(g->size() == totient(q));
    // every coprime residue has a unique exponent vector that maps back to it
    std::set<std::vector<u64>> seen;
    std::vector<u64> s(g->rank());
    for (u64 n = 0; n < q; ++n) {
      const bool ok = g->logs(n, s);
      CHECK(ok == (std::gcd(n, q) == 1));
      if (!ok) continue;
      CHECK(g->element(s) == n);
      seen.insert(s);
    }
    CHECK(seen.size() == g->size());
  }
}

TEST_CASE("enumeration counts and filters") {
  auto g5 = build_group(5);
  CHECK(enumerate_characters(g5, 4, true).size() == 2);
  CHECK(enumerate_characters(g5).size() == 4);
  CHECK(enumerate_characters(build_group(3), 2).size() == 1);
  CHECK(enumerate_characters(build_group(31), 7).empty());
  CHECK(enumerate_characters(build_group(31), 30, true).size() == 8);
  const auto p500 = sieve_primes(500);
  for (u64 q : p500.primes) {
    if (q < 3) continue;
    auto g = build_group(q);
    for (u64 d : divisors(q - 1)) CHECK(enumerate_characters(g, d).size() == totient(d));
  }
  // lexicographic order equals index order
  auto all = enumerate_characters(build_group(24));
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i].index() == i);
  CHECK(character_from_index(build_group(24), 5).exponents() == all[5].exponents());
}

TEST_CASE("evaluation examples") {
  auto g5 = build_group(5);
  // the character with chi(2) = e(1/4)
  std::optional<DirichletCharacter> chi;
  for (const auto& c : enumerate_characters(g5))
    if (c(2) == CharValue{1, 4}) chi = c;
  REQUIRE(chi);
  CHECK((*chi)(1).exponent == 0);
  CHECK((*chi)(4) == CharValue{2, 4});
  CHECK((*chi)(4) == (*chi)(2) * (*chi)(2));
  CHECK((*chi)(10).is_zero());
  CHECK((*chi)(7) == (*chi)(2));
}

TEST_CASE("complete multiplicativity") {
  std::mt19937_64 rng(11);
  for (u64 q : {7ull, 16ull, 45ull, 360ull, 1001ull, 4096ull, 9973ull, 10000ull}) {
    auto g = build_group(q);
    for (int c = 0; c < 5; ++c) {
      auto chi = character_from_index(g, rng() % g->size());
      for (int i = 0; i < 2000; ++i) {
        const u64 m = rng() % 100000 + 1, n = rng() % 100000 + 1;
        const CharValue a = chi(m), b = chi(n), ab = chi(m * n);
        CHECK(ab == a * b);
      }
    }
  }
}

TEST_CASE("conductors") {
  CHECK(enumerate_characters(build_group(7))[0].conductor() == 1);
  for (const auto& c : enumerate_characters(build_group(13)))
    if (!c.principal()) CHECK(c.conductor() == 13);
  // quadratic mod 3 lifted to mod 9
  auto g9 = build_group(9);
  int found = 0;
  for (const auto& c : enumerate_characters(g9, 2)) {
    CHECK(c.conductor() == 3);
    ++found;
  }
  CHECK(found == 1);
  for (u64 q = 3; q <= 200; ++q) {
    for (const auto& c : enumerate_characters(build_group(q))) {
      CHECK(c.conductor() == brute_conductor(c));
      CHECK(c.order() == brute_order(c));
      for (i64 l = 0; l <= static_cast<i64>(c.order()); ++l)
        CHECK(c.conductor() % c.power(l).conductor() == 0);
    }
  }
}

TEST_CASE("powers") {
  auto g = build_group(31);
  auto chars = enumerate_characters(g, 30);
  REQUIRE(!chars.empty());
  const auto& chi = chars[0];
  CHECK(chi.power(0).principal());
  for (i64 l = 1; l <= 30; ++l) {
    const auto p = chi.power(l);
    CHECK(p.order() == 30 / std::gcd<u64>(30, l));
    CHECK(brute_order(p) == p.order());
  }
  CHECK(chi.power(-1).exponents() == chi.power(29).exponents());
}

TEST_CASE("value tables agree with evaluation") {
  for (u64 q : {3ull, 8ull, 20ull, 105ull, 512ull, 999ull}) {
    for (const auto& c : enumerate_characters(build_group(q))) {
      const auto vals = c.value_table();
      for (u64 n = 0; n < q; ++n) {
        const CharValue v = c(n);
        CHECK(vals[n] == (v.is_zero() ? kZero32 : v.exponent));
      }
    }
  }
}

TEST_CASE("multiplicative wrappers") {
  auto g = build_group(7);
  auto chars = enumerate_characters(g, 6);
  const auto& chi = chars[0];
  auto f = as_multiplicative(chi, 1000);
  const auto table = f.table(1000);
  for (u64 n = 1; n <= 1000; ++n) {
    const CharValue v = chi(n);
    CHECK(table[n] == (v.is_zero() ? kZero32 : v.exponent));
    CHECK(f(n) == v);
  }
  auto psi = product_with_conjugate(chi, chi, 500);
  for (u64 n = 1; n <= 500; ++n) {
    const CharValue v = psi(n);
    if (n % 7 == 0)
      CHECK(v.is_zero());
    else
      CHECK(v.exponent == 0);
  }
  auto g5 = build_group(5);
  auto xi = enumerate_characters(g5, 4)[0];
  auto mix = product_with_conjugate(chi, xi, 300);
  CHECK(mix.order() == 12);
  for (u64 n = 1; n <= 300; ++n) {
    const CharValue v = mix(n);
    CHECK(v.is_zero() == (std::gcd(n, u64{35}) > 1));
    if (!v.is_zero()) {
      const auto expect = chi(n).complex() * std::conj(xi(n).complex());
      CHECK(std::abs(v.complex() - expect) < 1e-12);
    }
  }
  auto unit = one(100);
  CHECK(unit(97).exponent == 0);
  CHECK(unit.order() == 1);
  auto sq = f.power(2);
  for (u64 n = 1; n <= 100; ++n)
    if (!f(n).is_zero()) CHECK(sq(n).exponent == (2 * f(n).exponent) % 6);
}
