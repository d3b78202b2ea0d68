#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "charsum/arith.hpp"

namespace charsum {

// A value of a root-of-unity valued function: zero, or e(exponent/order).
struct CharValue {
  static constexpr u64 kZero = std::numeric_limits<u64>::max();
  u64 exponent = 0;
  u64 order = 1;

  static CharValue zero(u64 order) { return {kZero, order}; }
  bool is_zero() const { return exponent == kZero; }
  std::complex<double> complex() const;
  CharValue operator*(const CharValue& other) const;
  bool operator==(const CharValue&) const = default;
};

// e(j/d) for j = 0..d-1, evaluated in long double and rounded once.
std::vector<std::complex<double>> roots_of_unity(u64 d);

// Sentinel used in 32-bit value tables for residues sharing a factor with q.
inline constexpr std::uint32_t kZero32 = std::numeric_limits<std::uint32_t>::max();

// (Z/qZ)* as a product of cyclic factors, one DlogTable per prime power.
class CharacterGroup {
 public:
  struct Component {
    std::size_t part;   // index into parts()
    std::size_t slot;   // cyclic factor within that part
    u64 order;
    u64 generator;      // residue mod q: generator of this factor, 1 on the others
  };

  static constexpr u64 kResidueTableLimit = u64{1} << 24;

  explicit CharacterGroup(u64 q);

  u64 modulus() const { return q_; }
  const FactoredInteger& factored() const { return qf_; }
  const std::vector<DlogTable>& parts() const { return parts_; }
  const std::vector<Component>& components() const { return components_; }
  std::size_t rank() const { return components_.size(); }
  u64 size() const { return size_; }        // phi(q)
  u64 exponent() const { return exponent_; }  // lcm of component orders

  // Exponent vector of n in the component basis; false when gcd(n, q) > 1.
  bool logs(u64 n, std::span<u64> out) const;
  // Residue-indexed logs, rank() slots per residue (kZero32 if not coprime).
  // Empty when q exceeds kResidueTableLimit.
  std::span<const std::uint32_t> residue_logs() const { return residue_logs_; }
  // Product of generators raised to the given exponents, reduced mod q.
  u64 element(std::span<const u64> exponents) const;

 private:
  u64 q_;
  FactoredInteger qf_;
  std::vector<DlogTable> parts_;
  std::vector<Component> components_;
  u64 size_ = 1;
  u64 exponent_ = 1;
  std::vector<std::uint32_t> residue_logs_;
};

using GroupPtr = std::shared_ptr<const CharacterGroup>;

// Throws std::invalid_argument for q < 3.
GroupPtr build_group(u64 q);

class DirichletCharacter {
 public:
  DirichletCharacter(GroupPtr group, std::vector<u64> exponents);

  const GroupPtr& group() const { return group_; }
  u64 modulus() const { return group_->modulus(); }
  const std::vector<u64>& exponents() const { return e_; }
  u64 order() const { return order_; }
  u64 conductor() const { return conductor_; }
  bool primitive() const { return conductor_ == modulus(); }
  bool principal() const { return order_ == 1; }
  // Lexicographic rank of the exponent vector.
  u64 index() const;

  CharValue operator()(u64 n) const;
  // chi(n) = e(a/d) with a = sum_i weight_i * s_i(n) mod d.
  const std::vector<u64>& weights() const { return w_; }
  DirichletCharacter power(i64 l) const;
  DirichletCharacter conjugate() const { return power(-1); }

  // Exponent of chi(r) for every residue 0 <= r < q, kZero32 when gcd(r,q) > 1.
  std::vector<std::uint32_t> value_table() const;

 private:
  GroupPtr group_;
  std::vector<u64> e_;
  std::vector<u64> w_;
  u64 order_ = 1;
  u64 conductor_ = 1;
};

DirichletCharacter character_from_index(const GroupPtr& group, u64 index);

std::vector<DirichletCharacter> enumerate_characters(const GroupPtr& group,
                                                     u64 order = 0,
                                                     bool primitive_only = false);

// Completely multiplicative function with root-of-unity or zero values,
// determined by its values at primes up to limit.
class UnimodularMultiplicative {
 public:
  UnimodularMultiplicative(u64 order, u64 limit, std::vector<std::uint32_t> prime_exponents,
                           std::string label);

  u64 order() const { return D_; }
  u64 limit() const { return limit_; }
  const std::string& label() const { return label_; }

  CharValue at_prime(u64 p) const;
  // Multiplies prime values with multiplicity; every prime factor of n must be <= limit.
  CharValue operator()(u64 n) const;
  // Exponent of f(n) for n = 0..N (entry 0 unused), kZero32 for zero values.
  std::vector<std::uint32_t> table(u64 N) const;
  UnimodularMultiplicative power(i64 l) const;

 private:
  u64 D_;
  u64 limit_;
  std::vector<std::uint32_t> by_n_;  // indexed by prime p <= limit
  std::string label_;
};

UnimodularMultiplicative as_multiplicative(const DirichletCharacter& chi, u64 limit);
UnimodularMultiplicative one(u64 limit);
// psi = chi * conj(xi); carrier order lcm of the two orders.
UnimodularMultiplicative product_with_conjugate(const DirichletCharacter& chi,
                                                const DirichletCharacter& xi, u64 limit);

std::string describe(const DirichletCharacter& chi);

}  // namespace charsum
