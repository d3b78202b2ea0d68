#include "charsum/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace charsum {

bool PrimeTable::contains(u64 n) const {
  return std::binary_search(primes.begin(), primes.end(), n);
}

std::size_t PrimeTable::count_up_to(double y) const {
  if (y < 2) return 0;
  const u64 cut = static_cast<u64>(std::floor(y));
  return static_cast<std::size_t>(
      std::upper_bound(primes.begin(), primes.end(), cut) - primes.begin());
}

PrimeTable sieve_primes(u64 limit) {
  PrimeTable table;
  table.limit = limit;
  if (limit < 2) return table;
  table.primes.reserve(static_cast<std::size_t>(
      limit < 100 ? 30 : 1.1 * limit / std::log(static_cast<double>(limit))));
  table.primes.push_back(2);

  const u64 root = static_cast<u64>(std::sqrt(static_cast<long double>(limit)));
  std::vector<char> small(root + 1, 1);
  for (u64 i = 2; i * i <= root; ++i)
    if (small[i])
      for (u64 j = i * i; j <= root; j += i) small[j] = 0;

  // Odd-only segments: index i of a segment stands for low + 2i.
  constexpr u64 kSegment = 1 << 16;
  std::vector<char> seg(kSegment);
  std::vector<u64> sieving;  // odd primes <= root
  std::vector<u64> next;     // next odd multiple to cross off
  u64 s = 3;
  for (u64 low = 3; low <= limit; low += 2 * kSegment) {
    const u64 high = std::min(limit, low + 2 * kSegment - 1);
    std::fill(seg.begin(), seg.end(), 1);
    for (; s <= root && s * s <= high; s += 2) {
      if (small[s]) {
        sieving.push_back(s);
        next.push_back(s * s);
      }
    }
    for (std::size_t i = 0; i < sieving.size(); ++i) {
      const u64 p = sieving[i];
      u64 j = next[i];
      for (; j <= high; j += 2 * p) seg[(j - low) / 2] = 0;
      next[i] = j;
    }
    for (u64 n = low; n <= high; n += 2)
      if (seg[(n - low) / 2]) table.primes.push_back(n);
  }
  return table;
}

std::shared_ptr<const PrimeTable> primes_at_least(u64 limit) {
  static std::mutex mu;
  static std::shared_ptr<const PrimeTable> cached;
  std::lock_guard<std::mutex> lock(mu);
  if (!cached || cached->limit < limit)
    cached = std::make_shared<const PrimeTable>(sieve_primes(std::max<u64>(limit, 1 << 16)));
  return cached;
}

u64 PrimePower::value() const {
  u64 v = 1;
  for (unsigned i = 0; i < k; ++i) v *= p;
  return v;
}

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  a %= m;
  while (e) {
    if (e & 1) result = mulmod(result, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kSmall) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic for n < 3.3e24.
  for (u64 a : kSmall) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

// Brent's variant of Pollard rho; n is odd, composite and not a prime power
// of a small prime.
u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 f = pollard_brent(n);
  split(f, out);
  split(n / f, out);
}

}  // namespace

FactoredInteger factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  FactoredInteger result;
  result.value = n;
  std::vector<u64> primes;
  u64 m = n;
  for (u64 p = 2; p < 1000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
    while (m % p == 0) {
      primes.push_back(p);
      m /= p;
    }
  }
  if (m > 1) split(m, primes);
  std::sort(primes.begin(), primes.end());
  for (u64 p : primes) {
    if (!result.factors.empty() && result.factors.back().p == p)
      ++result.factors.back().k;
    else
      result.factors.push_back({p, 1});
  }
  return result;
}

u64 totient(const FactoredInteger& n) {
  u64 phi = 1;
  for (const auto& f : n.factors) phi *= f.value() / f.p * (f.p - 1);
  return phi;
}

u64 totient(u64 n) { return totient(factorize(n)); }

u64 divisor_count(const FactoredInteger& n) {
  u64 count = 1;
  for (const auto& f : n.factors) count *= f.k + 1;
  return count;
}

int mobius(const FactoredInteger& n) {
  int mu = 1;
  for (const auto& f : n.factors) {
    if (f.k > 1) return 0;
    mu = -mu;
  }
  return mu;
}

std::vector<u64> divisors(const FactoredInteger& n) {
  std::vector<u64> divs{1};
  for (const auto& f : n.factors) {
    const std::size_t base = divs.size();
    u64 pk = 1;
    for (unsigned e = 1; e <= f.k; ++e) {
      pk *= f.p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<u64> divisors(u64 n) { return divisors(factorize(n)); }

u64 largest_prime_factor(const FactoredInteger& n) {
  return n.factors.empty() ? 1 : n.factors.back().p;
}

u64 rough_part(const FactoredInteger& d, double z) {
  u64 part = 1;
  for (const auto& f : d.factors)
    if (static_cast<double>(f.p) > z) part *= f.value();
  return part;
}

u64 multiplicative_order(u64 a, u64 m) {
  if (m == 0) throw std::invalid_argument("multiplicative_order: zero modulus");
  if (m == 1) return 1;
  if (std::gcd(a % m, m) != 1)
    throw std::invalid_argument("multiplicative_order: gcd(a, m) > 1");
  const FactoredInteger phi = factorize(totient(m));
  u64 order = phi.value;
  for (const auto& f : phi.factors) {
    for (unsigned i = 0; i < f.k; ++i) {
      if (powmod(a, order / f.p, m) == 1)
        order /= f.p;
      else
        break;
    }
  }
  return order;
}

u64 primitive_root(u64 m) {
  if (m == 2) return 1;
  if (m == 4) return 3;
  u64 odd = m;
  bool doubled = false;
  if (odd % 2 == 0) {
    odd /= 2;
    doubled = true;
    if (odd % 2 == 0)
      throw std::invalid_argument("primitive_root: group is not cyclic");
  }
  const FactoredInteger f = factorize(odd);
  if (f.factors.size() != 1)
    throw std::invalid_argument("primitive_root: group is not cyclic");
  const u64 p = f.factors[0].p;
  const FactoredInteger pm1 = factorize(p - 1);
  u64 g = 2;
  for (;; ++g) {
    bool ok = true;
    for (const auto& r : pm1.factors)
      if (powmod(g, (p - 1) / r.p, p) == 1) {
        ok = false;
        break;
      }
    if (ok) break;
  }
  if (f.factors[0].k >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
  if (doubled && g % 2 == 0) g += odd;
  return g;
}

namespace {

// x with g^x = h inside the cyclic subgroup of prime order p generated by g.
u64 bsgs_prime_order(u64 g, u64 h, u64 p, u64 m) {
  const u64 step = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(p))));
  std::unordered_map<u64, u64> baby;
  baby.reserve(step * 2);
  u64 cur = 1;
  for (u64 j = 0; j < step; ++j) {
    baby.emplace(cur, j);
    cur = mulmod(cur, g, m);
  }
  // giant = g^{-step}
  const u64 giant = powmod(powmod(g, step, m), p - 1, m);
  u64 gamma = h;
  for (u64 i = 0; i <= step; ++i) {
    auto it = baby.find(gamma);
    if (it != baby.end()) return (i * step + it->second) % p;
    gamma = mulmod(gamma, giant, m);
  }
  throw std::logic_error("discrete_log: no solution in prime-order subgroup");
}

// Pohlig-Hellman given the exact order of g and its factorization.
u64 dlog_with_order(u64 g, u64 h, u64 m, const FactoredInteger& order) {
  const u64 n = order.value;
  u64 x = 0;
  u64 modulus = 1;
  for (const auto& f : order.factors) {
    const u64 pe = f.value();
    const u64 gamma = powmod(g, n / f.p, m);
    u64 digits = 0;
    u64 pk = 1;
    const u64 ginv = powmod(g, n - 1, m);
    for (unsigned k = 0; k < f.k; ++k) {
      // (g^{-digits} h)^{n / p^{k+1}}
      const u64 shifted = mulmod(powmod(ginv, digits, m), h, m);
      const u64 hk = powmod(shifted, n / (pk * f.p), m);
      const u64 dk = bsgs_prime_order(gamma, hk, f.p, m);
      digits += dk * pk;
      pk *= f.p;
    }
    // CRT merge of x mod modulus with digits mod pe.
    u64 t = 0;
    const u64 inv = modulus == 1 ? 0 : powmod(modulus % pe, totient(factorize(pe)) - 1, pe);
    if (modulus == 1) {
      x = digits;
    } else {
      const u64 diff = (digits + pe - x % pe) % pe;
      t = mulmod(diff, inv, pe);
      x += modulus * t;
    }
    modulus *= pe;
  }
  return x % n;
}

}  // namespace

u64 discrete_log(u64 g, u64 h, u64 m) {
  if (m < 2) throw std::invalid_argument("discrete_log: modulus must be >= 2");
  const FactoredInteger mf = factorize(m);
  const bool cyclic_prime_power =
      (mf.factors.size() == 1 && (mf.factors[0].p != 2 || m <= 4));
  if (!cyclic_prime_power)
    throw std::invalid_argument("discrete_log: modulus must be 4 or an odd prime power");
  if (std::gcd(h % m, m) != 1 || std::gcd(g % m, m) != 1)
    throw std::invalid_argument("discrete_log: arguments must be coprime to the modulus");
  const u64 phi = totient(mf);
  const FactoredInteger order = factorize(phi);
  for (const auto& f : order.factors)
    if (powmod(g, phi / f.p, m) == 1)
      throw std::invalid_argument("discrete_log: not a generator");
  if (phi == 1) return 0;
  return dlog_with_order(g % m, h % m, m, order);
}

DlogTable::DlogTable(u64 p, unsigned k) : p_(p), k_(k) {
  modulus_ = PrimePower{p, k}.value();
  if (p == 2) {
    if (k == 2) {
      generators_ = {3};
      orders_ = {2};
    } else if (k >= 3) {
      generators_ = {modulus_ - 1, 5};
      orders_ = {2, modulus_ / 4};
    }
  } else {
    generators_ = {primitive_root(modulus_)};
    orders_ = {modulus_ / p * (p - 1)};
  }
  if (rank() == 0 || modulus_ > kEagerLimit) return;

  const std::size_t r = rank();
  table_.assign(static_cast<std::size_t>(modulus_) * r, kNotCoprime);
  if (p == 2 && k >= 3) {
    u64 y = 1;
    for (u64 e = 0; e < orders_[1]; ++e) {
      table_[y * 2] = 0;
      table_[y * 2 + 1] = static_cast<std::uint32_t>(e);
      table_[(modulus_ - y) * 2] = 1;
      table_[(modulus_ - y) * 2 + 1] = static_cast<std::uint32_t>(e);
      y = y * 5 % modulus_;
    }
  } else {
    u64 y = 1;
    const u64 g = generators_[0];
    for (u64 e = 0; e < orders_[0]; ++e) {
      table_[y] = static_cast<std::uint32_t>(e);
      y = mulmod(y, g, modulus_);
    }
  }
}

void DlogTable::compute(u64 r, std::span<u64> out) const {
  if (p_ == 2 && k_ >= 3) {
    const bool neg = (r % 4) == 3;
    out[0] = neg ? 1 : 0;
    const u64 pos = neg ? modulus_ - r : r;
    out[1] = dlog_with_order(5, pos, modulus_, factorize(orders_[1]));
  } else {
    out[0] = dlog_with_order(generators_[0], r, modulus_, factorize(orders_[0]));
  }
}

bool DlogTable::lookup(u64 n, std::span<u64> out) const {
  const u64 r = n % modulus_;
  if (r % p_ == 0) return false;
  const std::size_t rk = rank();
  if (rk == 0) return true;
  if (table_.empty()) {
    compute(r, out);
    return true;
  }
  for (std::size_t i = 0; i < rk; ++i) out[i] = table_[r * rk + i];
  return true;
}

}  // namespace charsum
