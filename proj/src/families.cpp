#include "charsum/families.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace charsum {

namespace {

bool order_allowed(const FamilySpec& s, u64 d) {
  if (d < s.d_min) return false;
  if (s.d_max != 0 && d > s.d_max) return false;
  if (s.pow2_only && (d & (d - 1)) != 0) return false;
  if (s.squarefree_only && mobius(factorize(d)) == 0) return false;
  return true;
}

}  // namespace

std::vector<u64> family_moduli(const FamilySpec& s) {
  std::vector<u64> qs;
  if (!s.moduli.empty()) {
    qs = s.moduli;
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  } else {
    if (s.q_min > s.q_max) throw std::invalid_argument("family: empty modulus range");
    for (u64 q = s.q_min; q <= s.q_max; ++q) qs.push_back(q);
  }
  std::vector<u64> out;
  for (u64 q : qs) {
    if (q < 3) throw std::invalid_argument("family: moduli must be >= 3");
    if (s.primes_only && !is_prime(q)) continue;
    out.push_back(q);
  }
  return out;
}

std::optional<DirichletCharacter> first_character(const GroupPtr& group, u64 order,
                                                  bool primitive_only) {
  if (group->exponent() % order != 0) return std::nullopt;
  const auto& comps = group->components();
  std::vector<u64> e(comps.size(), 0);
  for (u64 idx = 0; idx < group->size(); ++idx) {
    u64 o = 1;
    for (std::size_t i = 0; i < comps.size(); ++i)
      o = std::lcm(o, comps[i].order / std::gcd(comps[i].order, e[i]));
    if (o == order) {
      DirichletCharacter chi(group, e);
      if (!primitive_only || chi.primitive()) return chi;
    }
    for (std::size_t i = comps.size(); i-- > 0;) {
      if (++e[i] < comps[i].order) break;
      e[i] = 0;
    }
  }
  return std::nullopt;
}

std::vector<DirichletCharacter> generate_family(const FamilySpec& s) {
  std::vector<DirichletCharacter> out;
  for (u64 q : family_moduli(s)) {
    const auto group = build_group(q);
    if (s.one_per_order) {
      for (u64 d : divisors(group->exponent())) {
        if (!order_allowed(s, d)) continue;
        if (auto chi = first_character(group, d, s.primitive_only)) out.push_back(std::move(*chi));
      }
    } else {
      for (auto& chi : enumerate_characters(group, 0, s.primitive_only))
        if (order_allowed(s, chi.order())) out.push_back(std::move(chi));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.modulus() != b.modulus() ? a.modulus() < b.modulus() : a.index() < b.index();
  });
  return out;
}

}  // namespace charsum
