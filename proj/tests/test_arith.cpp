#include <doctest.h>

#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "charsum/arith.hpp"

using namespace charsum;

namespace {

bool trial_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 brute_order(u64 a, u64 m) {
  u64 x = a % m, e = 1;
  while (x != 1 % m) {
    x = x * a % m;
    ++e;
  }
  return e;
}

}  // namespace

TEST_CASE("sieve small cases") {
  CHECK(sieve_primes(10).primes == std::vector<u64>{2, 3, 5, 7});
  CHECK(sieve_primes(1).primes.empty());
  CHECK(sieve_primes(0).primes.empty());
  CHECK(sieve_primes(2).primes == std::vector<u64>{2});
}

TEST_CASE("sieve up to 1e6 matches trial division") {
  const auto table = sieve_primes(1'000'000);
  CHECK(table.primes.size() == 78498);
  std::size_t oracle = 0;
  std::size_t i = 0;
  bool agree = true;
  for (u64 n = 2; n <= 1'000'000; ++n) {
    if (trial_prime(n)) {
      ++oracle;
      if (i >= table.primes.size() || table.primes[i] != n) agree = false;
      ++i;
    }
  }
  CHECK(agree);
  CHECK(oracle == table.primes.size());
  CHECK(table.count_up_to(100.5) == 25);
  CHECK(table.contains(999983));
  CHECK_FALSE(table.contains(999981));
}

TEST_CASE("sieve segment boundaries") {
  for (u64 limit : {131071ull, 131072ull, 131073ull, 262147ull}) {
    const auto t = sieve_primes(limit);
    std::size_t expect = 0;
    for (u64 n = 2; n <= limit; ++n) expect += trial_prime(n);
    CHECK(t.primes.size() == expect);
  }
}

TEST_CASE("factorize examples") {
  auto f = factorize(12);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == PrimePower{2, 2});
  CHECK(f.factors[1] == PrimePower{3, 1});
  CHECK(factorize(1).factors.empty());
  auto g = factorize(1488);
  REQUIRE(g.factors.size() == 3);
  CHECK(g.factors[0] == PrimePower{2, 4});
  CHECK(g.factors[1] == PrimePower{3, 1});
  CHECK(g.factors[2] == PrimePower{31, 1});
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorize random inputs") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 1000; ++i) {
    const u64 n = rng() % 1'000'000'000 + 1;
    const auto f = factorize(n);
    u64 prod = 1;
    for (std::size_t j = 0; j < f.factors.size(); ++j) {
      CHECK(is_prime(f.factors[j].p));
      CHECK(trial_prime(f.factors[j].p));
      if (j) CHECK(f.factors[j - 1].p < f.factors[j].p);
      prod *= f.factors[j].value();
    }
    CHECK(prod == n);
  }
  // semiprimes with large factors exercise the rho path
  const u64 big = 4294967291ull * 4294967279ull;
  const auto f = factorize(big);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].p == 4294967279ull);
  CHECK(is_prime(18446744073709551557ull));
  CHECK_FALSE(is_prime(3215031751ull));
}

TEST_CASE("multiplicative order") {
  CHECK(multiplicative_order(1, 7) == 1);
  CHECK(multiplicative_order(4, 5) == 2);
  CHECK(multiplicative_order(3, 7) == 6);
  CHECK_THROWS_AS(multiplicative_order(6, 9), std::invalid_argument);
  for (u64 m = 2; m < 300; ++m)
    for (u64 a = 1; a < m; ++a)
      if (std::gcd(a, m) == 1) {
        const u64 o = multiplicative_order(a, m);
        CHECK(o == brute_order(a, m));
        CHECK(totient(m) % o == 0);
      }
}

TEST_CASE("discrete log examples") {
  CHECK(discrete_log(3, 9, 31) == 2);
  CHECK(discrete_log(3, 1, 31) == 0);
  u64 oracle = 0, x = 1;
  while (x != 3) {
    x = x * 2 % 101;
    ++oracle;
  }
  CHECK(oracle == 69);
  CHECK(discrete_log(2, 3, 101) == 69);
  CHECK(discrete_log(3, 3, 4) == 1);
  CHECK_THROWS_AS(discrete_log(4, 2, 31), std::invalid_argument);
  CHECK_THROWS_AS(discrete_log(3, 5, 16), std::invalid_argument);
}

TEST_CASE("discrete log round trip on prime powers") {
  std::mt19937_64 rng(5);
  for (u64 m = 3; m <= 10'000; ++m) {
    const auto f = factorize(m);
    if (f.factors.size() != 1 || f.factors[0].p == 2) continue;
    const u64 g = primitive_root(m);
    const u64 phi = totient(f);
    CHECK(multiplicative_order(g, m) == phi);
    for (int i = 0; i < 3; ++i) {
      const u64 e = rng() % (3 * phi);
      CHECK(discrete_log(g, powmod(g, e, m), m) == e % phi);
    }
  }
}

TEST_CASE("primitive roots") {
  CHECK(primitive_root(2) == 1);
  CHECK(primitive_root(4) == 3);
  CHECK(primitive_root(7) == 3);
  for (u64 m : {9ull, 25ull, 18ull, 50ull, 2 * 343ull, 1331ull})
    CHECK(multiplicative_order(primitive_root(m), m) == totient(m));
  CHECK_THROWS_AS(primitive_root(8), std::invalid_argument);
  CHECK_THROWS_AS(primitive_root(15), std::invalid_argument);
}

TEST_CASE("rough part") {
  CHECK(rough_part(factorize(12), 2) == 3);
  CHECK(rough_part(factorize(1024), 2) == 1);
  CHECK(rough_part(factorize(1024), 2 - 1e-9) == 1024);
  CHECK(rough_part(factorize(1488), 3) == 31);
  for (u64 d = 1; d <= 100'000; ++d) {
    const auto f = factorize(d);
    for (double z : {1.0, 2.0, 3.0, 5.0, 10.0}) {
      u64 smooth = 1;
      for (const auto& pp : f.factors)
        if (static_cast<double>(pp.p) <= z) smooth *= pp.value();
      CHECK(rough_part(f, z) * smooth == d);
    }
  }
}

TEST_CASE("divisor functions") {
  CHECK(divisor_count(factorize(6)) == 4);
  CHECK(totient(6) == 2);
  CHECK(divisor_count(factorize(1)) == 1);
  CHECK(totient(1) == 1);
  u64 dcount = 0, phi = 0;
  for (u64 a = 1; a <= 1488; ++a) {
    dcount += (1488 % a == 0);
    phi += (std::gcd(a, u64{1488}) == 1);
  }
  CHECK(dcount == 20);
  CHECK(phi == 480);
  CHECK(divisor_count(factorize(1488)) == 20);
  CHECK(totient(1488) == 480);
  CHECK(divisors(12) == std::vector<u64>{1, 2, 3, 4, 6, 12});
  CHECK(mobius(factorize(30)) == -1);
  CHECK(mobius(factorize(12)) == 0);
  CHECK(mobius(factorize(1)) == 1);
}

TEST_CASE("dlog tables reproduce residues") {
  for (auto [p, k] : std::vector<std::pair<u64, unsigned>>{
           {2, 1}, {2, 2}, {2, 3}, {2, 6}, {3, 1}, {3, 4}, {5, 3}, {31, 1}, {7, 2}}) {
    DlogTable t(p, k);
    const u64 m = t.modulus();
    u64 covered = 0;
    std::vector<u64> e(2);
    for (u64 r = 0; r < m; ++r) {
      const bool ok = t.lookup(r, e);
      CHECK(ok == (r % p != 0));
      if (!ok) continue;
      ++covered;
      u64 back = 1;
      for (std::size_t i = 0; i < t.rank(); ++i)
        back = mulmod(back, powmod(t.generators()[i], e[i], m), m);
      CHECK(back == r % m);
    }
    u64 prod = 1;
    for (u64 o : t.orders()) prod *= o;
    CHECK(prod == covered);
  }
}

TEST_CASE("dlog fallback above the eager limit") {
  u64 p = DlogTable::kEagerLimit + 1;
  while (!is_prime(p)) ++p;
  for (auto [pp, k] : std::vector<std::pair<u64, unsigned>>{{p, 1}, {2, 25}}) {
    DlogTable t(pp, k);
    CHECK_FALSE(t.tabulated());
    const u64 m = t.modulus();
    std::mt19937_64 rng(3);
    std::vector<u64> e(2);
    for (int i = 0; i < 50; ++i) {
      const u64 r = rng() % m;
      if (!t.lookup(r, e)) continue;
      u64 back = 1;
      for (std::size_t j = 0; j < t.rank(); ++j)
        back = mulmod(back, powmod(t.generators()[j], e[j], m), m);
      CHECK(back == r);
      for (std::size_t j = 0; j < t.rank(); ++j) CHECK(e[j] < t.orders()[j]);
    }
  }
}
