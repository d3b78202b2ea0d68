#pragma once

// Exact integer number theory used by every other module: sieving,
// factorization, multiplicative orders, primitive roots and discrete
// logarithms over prime-power moduli.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace charsum {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct PrimeTable {
  u64 limit = 0;
  std::vector<u64> primes;  // ascending, exactly the primes <= limit

  bool contains(u64 n) const;
  // Number of primes <= y (y may exceed limit only up to limit).
  std::size_t count_up_to(double y) const;
};

// Segmented sieve of Eratosthenes.
PrimeTable sieve_primes(u64 limit);

// Process-wide table covering at least limit; grows on demand, thread-safe.
std::shared_ptr<const PrimeTable> primes_at_least(u64 limit);

struct PrimePower {
  u64 p = 0;
  unsigned k = 0;
  u64 value() const;
  bool operator==(const PrimePower&) const = default;
};

struct FactoredInteger {
  u64 value = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing, k >= 1
};

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);

// Deterministic Miller-Rabin, valid on the whole 64-bit range.
bool is_prime(u64 n);

// Throws std::invalid_argument for n == 0.
FactoredInteger factorize(u64 n);

u64 totient(const FactoredInteger& n);
u64 totient(u64 n);
u64 divisor_count(const FactoredInteger& n);
int mobius(const FactoredInteger& n);
// All positive divisors, ascending.
std::vector<u64> divisors(const FactoredInteger& n);
std::vector<u64> divisors(u64 n);
u64 largest_prime_factor(const FactoredInteger& n);

// d_z: product of the prime-power parts p^k || d with p > z (strict).
u64 rough_part(const FactoredInteger& d, double z);

// Least e >= 1 with a^e = 1 (mod m). Throws if gcd(a, m) != 1.
u64 multiplicative_order(u64 a, u64 m);

// Generator of (Z/mZ)* for m = 2, 4, p^k, 2p^k (p odd).
// Throws std::invalid_argument when the group is not cyclic.
u64 primitive_root(u64 m);

// Least e >= 0 with g^e = h (mod m), for m = 4 or an odd prime power and g a
// generator. Pohlig-Hellman over the factored group order with baby-step
// giant-step in each prime-order subgroup.
u64 discrete_log(u64 g, u64 h, u64 m);

// Discrete-log tables for one prime-power factor p^k of a modulus.
// Cyclic factors: odd p^k -> one (primitive root), 4 -> one (generator 3),
// 2 -> none, 2^k with k >= 3 -> two (generators -1 and 5).
class DlogTable {
 public:
  static constexpr std::uint32_t kNotCoprime = 0xffffffffu;
  // Eager tables are built for moduli up to this bound.
  static constexpr u64 kEagerLimit = 10'000'000;

  DlogTable() = default;
  DlogTable(u64 p, unsigned k);

  u64 modulus() const { return modulus_; }
  u64 prime() const { return p_; }
  unsigned exponent() const { return k_; }
  std::span<const u64> generators() const { return generators_; }
  std::span<const u64> orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  bool tabulated() const { return !table_.empty() || rank() == 0; }

  // Writes the exponent vector of residue n (any n, reduced internally) and
  // returns false when gcd(n, p) > 1.
  bool lookup(u64 n, std::span<u64> out) const;

  // Raw table access; slot i of residue r lives at r * rank() + i.
  std::span<const std::uint32_t> raw() const { return table_; }

 private:
  void compute(u64 r, std::span<u64> out) const;

  u64 p_ = 0;
  unsigned k_ = 0;
  u64 modulus_ = 1;
  std::vector<u64> generators_;
  std::vector<u64> orders_;
  std::vector<std::uint32_t> table_;
};

}  // namespace charsum
