#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "charsum/spectrum.hpp"

using namespace charsum;

namespace {

Bitset from(u64 d, std::initializer_list<u64> xs) {
  Bitset b(d);
  for (u64 v : xs) b.set(v);
  return b;
}

std::set<u64> brute_sumset(const std::set<u64>& a, const std::set<u64>& b, u64 d) {
  std::set<u64> out;
  for (u64 x : a)
    for (u64 y : b) out.insert((x + y) % d);
  return out;
}

std::set<u64> as_set(const Bitset& b) {
  std::set<u64> s;
  for (auto i = b.find_first(); i != Bitset::npos; i = b.find_next(i)) s.insert(i);
  return s;
}

u64 brute_discrepancy(u64 j0, u64 r, double theta) {
  u64 c = 0;
  for (u64 l = 1; l <= r; ++l) {
    // ||j0 l / r|| = min(k, r - k) / r with k = j0 l mod r, compared exactly
    const u64 k = (j0 * l) % r;
    const u64 m = std::min(k, r - k);
    if (static_cast<double>(m) <= theta * static_cast<double>(r) * (1 + 1e-12) + 1e-12) ++c;
  }
  return c;
}

}  // namespace

TEST_CASE("sumsets") {
  CHECK(as_set(iterated_sumset(from(10, {1, 9}), 2)) == std::set<u64>{0, 2, 8});
  CHECK(iterated_sumset(from(7, {0}), 5) == from(7, {0}));
  const Bitset h = multiples_of(4, 24);
  CHECK(iterated_sumset(h, 3) == h);
  CHECK_THROWS_AS(iterated_sumset(Bitset(5), 2), std::invalid_argument);
  CHECK_THROWS_AS(iterated_sumset(from(5, {1}), 0), std::invalid_argument);

  std::mt19937_64 rng(41);
  for (int it = 0; it < 60; ++it) {
    const u64 d = 2 + rng() % 511;
    Bitset a(d), b(d), c(d);
    for (u64 i = 0; i < d; ++i) {
      if (rng() % 17 == 0) a.set(i);
      if (rng() % 23 == 0) b.set(i);
      if (rng() % 29 == 0) c.set(i);
    }
    a.set(rng() % d);
    b.set(rng() % d);
    c.set(rng() % d);
    CHECK(as_set(sumset(a, b)) == brute_sumset(as_set(a), as_set(b), d));
    CHECK(sumset(sumset(a, b), c) == sumset(a, sumset(b, c)));
    CHECK(sumset(a, b) == sumset(b, a));
  }
}

TEST_CASE("stabilization") {
  auto r = stabilize(from(12, {0, 3, 9}));
  CHECK(r.stabilized);
  CHECK(r.m == 2);
  CHECK(as_set(r.H) == std::set<u64>{0, 3, 6, 9});
  CHECK(r.g == 3);
  CHECK(r.is_subgroup);
  CHECK(r.contains_S);

  auto whole = stabilize(from(10, {0, 1, 9}));
  CHECK(whole.g == 1);
  CHECK(whole.H.count() == 10);
  CHECK(whole.m == 5);

  CHECK_THROWS_AS(stabilize(from(12, {0, 3})), std::invalid_argument);
  CHECK_THROWS_AS(stabilize(from(12, {3, 9})), std::invalid_argument);

  // H is always the subgroup generated by S for symmetric S containing 0
  std::mt19937_64 rng(43);
  for (int it = 0; it < 80; ++it) {
    const u64 d = 2 + rng() % 300;
    Bitset s(d);
    s.set(0);
    u64 g = d;
    for (int k = 0; k < 3; ++k) {
      const u64 v = rng() % d;
      s.set(v);
      s.set((d - v) % d);
      g = std::gcd(g, v);
    }
    auto st = stabilize(s);
    CHECK(st.stabilized);
    CHECK(st.is_subgroup);
    CHECK(st.g == std::gcd(g, d));
    CHECK(iterated_sumset(s, st.m) == st.H);
    if (st.m > 1) CHECK(iterated_sumset(s, st.m - 1) != st.H);
  }
}

TEST_CASE("discrepancy count") {
  CHECK(discrepancy_count(5, 10, 0.0) == 5);
  CHECK(discrepancy_count(1, 7, 1.0 / 7) == 3);
  CHECK(discrepancy_count(3, 11, 0.5) == 11);
  for (u64 r = 1; r <= 60; ++r) {
    for (u64 j0 = 0; j0 <= r; ++j0) {
      u64 prev = 0;
      for (int t = 0; t <= 50; ++t) {
        const double theta = t / 100.0;
        const u64 c = discrepancy_count(j0, r, theta);
        CHECK(c == brute_discrepancy(j0, r, theta));
        CHECK(c >= prev);
        prev = c;
        // for j0 a unit and theta >= 1/r the count is at most 4 theta r
        if (std::gcd(j0, r) == 1 && theta * r >= 1.0) CHECK(double(c) <= 4.0 * theta * r + 1e-9);
      }
    }
  }
}

TEST_CASE("spectra") {
  const auto chars = enumerate_characters(build_group(211), 0, true);
  for (u64 i = 0; i < chars.size(); i += 17) {
    const auto& chi = chars[i];
    const auto sums = sums_all_powers(level_counts(chi, 500));
    auto big = spectrum_cesaro(sums, 1.5);
    CHECK(big.nonzero().none());
    auto small = spectrum_cesaro(sums, 0.01);
    CHECK(small.members.test(0));
    for (u64 l = 1; l < small.d; ++l) CHECK(small.members.test(l) == small.members.test(small.d - l));

    const auto mt = max_all_powers(chi);
    auto ms = spectrum_maximal(mt, 211, 0.05);
    CHECK(ms.members.test(0));
    for (u64 l = 1; l < ms.d; ++l) CHECK(ms.members.test(l) == ms.members.test(ms.d - l));
    CHECK(spectrum_maximal(mt, 211, 1e9).members.none());
  }
}

TEST_CASE("structure check") {
  const auto g = build_group(1009);
  const auto chi = enumerate_characters(g, 12)[0];

  // eps near 1 leaves only the principal power, so the hypothesis fails
  auto none = structure_check(chi, 1009, 0.9, SpectrumKind::Cesaro);
  CHECK_FALSE(none.hypothesis_met);
  CHECK(none.pass);
  CHECK(none.note == "hypothesis not met");

  // x = 1 makes every power sum equal 1, so S is everything and g = 1
  auto all = structure_check(chi, 1, 0.5, SpectrumKind::Cesaro);
  CHECK(all.hypothesis_met);
  CHECK(all.members_count == 12);
  CHECK(all.g == 1);
  CHECK(all.m == 1);
  CHECK(all.pass);
  CHECK(all.bound_lhs >= 0.0);

  for (u64 x : {50, 200, 1009}) {
    for (double eps : {0.1, 0.2, 0.3}) {
      auto rep = structure_check(chi, x, eps, SpectrumKind::Cesaro);
      if (!rep.hypothesis_met) continue;
      CHECK(rep.pass);
      CHECK(rep.d % rep.g == 0);
    }
  }
  auto mx = structure_check(chi, 0, 0.1, SpectrumKind::Maximal);
  CHECK(mx.x == 1009);
  if (mx.hypothesis_met && mx.note.empty()) {
    CHECK(mx.pass);
    CHECK(mx.xi_conductor >= 1);
  }
}
