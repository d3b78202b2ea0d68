#include "charsum/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace charsum {

std::complex<double> CharValue::complex() const {
  if (is_zero()) return {0.0, 0.0};
  if ((4 * exponent) % order == 0) {
    switch ((4 * exponent / order) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const long double angle = 2.0L * std::numbers::pi_v<long double> *
                            static_cast<long double>(exponent) / static_cast<long double>(order);
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

CharValue CharValue::operator*(const CharValue& other) const {
  if (order != other.order) throw std::invalid_argument("CharValue: carrier orders differ");
  if (is_zero() || other.is_zero()) return zero(order);
  return {(exponent + other.exponent) % order, order};
}

std::vector<std::complex<double>> roots_of_unity(u64 d) {
  std::vector<std::complex<double>> roots(d);
  for (u64 j = 0; 2 * j <= d; ++j) {
    roots[j] = CharValue{j, d}.complex();
    if (j > 0) roots[d - j] = std::conj(roots[j]);
  }
  return roots;
}

namespace {

i64 inverse_mod(i64 a, i64 m) {
  i64 g = m, x = 0, x1 = 1, a1 = a % m;
  while (a1) {
    const i64 t = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - t * a1);
    std::tie(x, x1) = std::make_pair(x1, x - t * x1);
  }
  if (g != 1) throw std::invalid_argument("inverse_mod: not invertible");
  return ((x % m) + m) % m;
}

}  // namespace

CharacterGroup::CharacterGroup(u64 q) : q_(q) {
  if (q < 3) throw std::invalid_argument("build_group: modulus must be >= 3");
  qf_ = factorize(q);
  for (const auto& pp : qf_.factors) {
    parts_.emplace_back(pp.p, pp.k);
    const DlogTable& t = parts_.back();
    const u64 m = t.modulus();
    const u64 rest = q / m;
    // CRT lift: x = g (mod m), x = 1 (mod rest).
    for (std::size_t s = 0; s < t.rank(); ++s) {
      const u64 g = t.generators()[s];
      u64 x = g;
      if (rest > 1) {
        const u64 inv = static_cast<u64>(inverse_mod(static_cast<i64>(m % rest), static_cast<i64>(rest)));
        // x = g + m * k with g + m k = 1 (mod rest)
        const u64 k = mulmod((1 + rest - g % rest) % rest, inv, rest);
        x = g + m * k;
      }
      components_.push_back({parts_.size() - 1, s, t.orders()[s], x % q});
      size_ *= t.orders()[s];
      exponent_ = std::lcm(exponent_, t.orders()[s]);
    }
  }

  if (q > kResidueTableLimit) return;
  const std::size_t r = rank();
  residue_logs_.assign(static_cast<std::size_t>(q) * r, kZero32);
  std::vector<u64> red(parts_.size(), 0);
  std::vector<u64> buf(2);
  std::vector<std::uint32_t> tmp(r);
  for (u64 n = 0; n < q; ++n) {
    bool coprime = true;
    std::size_t c = 0;
    for (std::size_t i = 0; i < parts_.size() && coprime; ++i) {
      const DlogTable& t = parts_[i];
      if (red[i] % t.prime() == 0) {
        coprime = false;
        break;
      }
      if (t.rank() == 0) continue;
      auto raw = t.raw();
      for (std::size_t s = 0; s < t.rank(); ++s) {
        if (!raw.empty()) {
          tmp[c++] = raw[red[i] * t.rank() + s];
        } else {
          t.lookup(red[i], buf);
          tmp[c++] = static_cast<std::uint32_t>(buf[s]);
        }
      }
    }
    if (coprime)
      for (std::size_t s = 0; s < r; ++s) residue_logs_[n * r + s] = tmp[s];
    for (std::size_t i = 0; i < parts_.size(); ++i)
      if (++red[i] == parts_[i].modulus()) red[i] = 0;
  }
}

bool CharacterGroup::logs(u64 n, std::span<u64> out) const {
  const std::size_t r = rank();
  if (!residue_logs_.empty()) {
    const u64 m = n % q_;
    const std::uint32_t* row = residue_logs_.data() + m * r;
    if (r == 0) return std::gcd(m, q_) == 1;
    if (row[0] == kZero32) return false;
    for (std::size_t s = 0; s < r; ++s) out[s] = row[s];
    return true;
  }
  std::size_t c = 0;
  u64 buf[2];
  for (const auto& t : parts_) {
    if (!t.lookup(n, std::span<u64>(buf, 2))) return false;
    for (std::size_t s = 0; s < t.rank(); ++s) out[c++] = buf[s];
  }
  return true;
}

u64 CharacterGroup::element(std::span<const u64> exponents) const {
  u64 x = 1 % q_;
  for (std::size_t i = 0; i < components_.size(); ++i)
    x = mulmod(x, powmod(components_[i].generator, exponents[i], q_), q_);
  return x;
}

GroupPtr build_group(u64 q) { return std::make_shared<const CharacterGroup>(q); }

namespace {

u64 part_conductor(const DlogTable& t, std::span<const u64> e) {
  const u64 p = t.prime();
  const unsigned k = t.exponent();
  if (p != 2) {
    if (e[0] == 0) return 1;
    const u64 phi = t.orders()[0];
    u64 pj = 1;  // p^{j-1}
    for (unsigned j = 1; j <= k; ++j) {
      if (mulmod(e[0], (p - 1) * pj, phi) == 0) return pj * p;
      pj *= p;
    }
    return t.modulus();
  }
  if (k <= 1) return 1;
  if (k == 2) return e[0] == 0 ? 1 : 4;
  const u64 a = e[0], b = e[1];
  if (b == 0) return a == 0 ? 1 : 4;
  const u64 o = t.orders()[1];  // 2^{k-2}
  for (unsigned j = 3; j <= k; ++j) {
    const u64 step = u64{1} << (j - 2);
    if (mulmod(b, step, o) == 0) return u64{1} << j;
  }
  return t.modulus();
}

}  // namespace

DirichletCharacter::DirichletCharacter(GroupPtr group, std::vector<u64> exponents)
    : group_(std::move(group)), e_(std::move(exponents)) {
  const auto& comps = group_->components();
  if (e_.size() != comps.size())
    throw std::invalid_argument("DirichletCharacter: exponent vector has wrong length");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    e_[i] %= comps[i].order;
    const u64 o = comps[i].order / std::gcd(comps[i].order, e_[i]);
    order_ = std::lcm(order_, o);
  }
  w_.resize(e_.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const u64 g = std::gcd(comps[i].order, e_[i]);
    w_[i] = e_[i] == 0 ? 0 : (e_[i] / g) * (order_ / (comps[i].order / g)) % order_;
  }
  std::size_t c = 0;
  for (const auto& t : group_->parts()) {
    conductor_ *= part_conductor(t, std::span<const u64>(e_).subspan(c, t.rank()));
    c += t.rank();
  }
}

u64 DirichletCharacter::index() const {
  u64 idx = 0;
  const auto& comps = group_->components();
  for (std::size_t i = 0; i < comps.size(); ++i) idx = idx * comps[i].order + e_[i];
  return idx;
}

CharValue DirichletCharacter::operator()(u64 n) const {
  u64 s[64];
  if (!group_->logs(n, std::span<u64>(s, group_->rank()))) return CharValue::zero(order_);
  u64 a = 0;
  for (std::size_t i = 0; i < w_.size(); ++i) a = (a + mulmod(w_[i], s[i], order_)) % order_;
  return {a, order_};
}

DirichletCharacter DirichletCharacter::power(i64 l) const {
  std::vector<u64> e(e_.size());
  const auto& comps = group_->components();
  for (std::size_t i = 0; i < e.size(); ++i) {
    const i64 o = static_cast<i64>(comps[i].order);
    const i64 lr = ((l % o) + o) % o;
    e[i] = mulmod(static_cast<u64>(lr), e_[i], comps[i].order);
  }
  return DirichletCharacter(group_, std::move(e));
}

std::vector<std::uint32_t> DirichletCharacter::value_table() const {
  const u64 q = modulus();
  std::vector<std::uint32_t> vals(q, kZero32);
  const auto logs = group_->residue_logs();
  const std::size_t r = group_->rank();
  if (logs.empty()) {
    for (u64 n = 0; n < q; ++n) {
      const CharValue v = (*this)(n);
      if (!v.is_zero()) vals[n] = static_cast<std::uint32_t>(v.exponent);
    }
    return vals;
  }
  if (r == 0) {
    for (u64 n = 0; n < q; ++n)
      if (std::gcd(n, q) == 1) vals[n] = 0;
    return vals;
  }
  for (u64 n = 0; n < q; ++n) {
    const std::uint32_t* row = logs.data() + n * r;
    if (row[0] == kZero32) continue;
    u64 a = 0;
    for (std::size_t i = 0; i < r; ++i) a += w_[i] * row[i] % order_;
    vals[n] = static_cast<std::uint32_t>(a % order_);
  }
  return vals;
}

DirichletCharacter character_from_index(const GroupPtr& group, u64 index) {
  const auto& comps = group->components();
  if (index >= group->size()) throw std::out_of_range("character index out of range");
  std::vector<u64> e(comps.size());
  for (std::size_t i = comps.size(); i-- > 0;) {
    e[i] = index % comps[i].order;
    index /= comps[i].order;
  }
  return DirichletCharacter(group, std::move(e));
}

std::vector<DirichletCharacter> enumerate_characters(const GroupPtr& group, u64 order,
                                                     bool primitive_only) {
  std::vector<DirichletCharacter> out;
  if (order != 0 && group->exponent() % order != 0) return out;
  const auto& comps = group->components();
  std::vector<u64> e(comps.size(), 0);
  for (u64 idx = 0; idx < group->size(); ++idx) {
    u64 o = 1;
    for (std::size_t i = 0; i < comps.size(); ++i)
      o = std::lcm(o, comps[i].order / std::gcd(comps[i].order, e[i]));
    if (order == 0 || o == order) {
      DirichletCharacter chi(group, e);
      if (!primitive_only || chi.primitive()) out.push_back(std::move(chi));
    }
    for (std::size_t i = comps.size(); i-- > 0;) {
      if (++e[i] < comps[i].order) break;
      e[i] = 0;
    }
  }
  return out;
}

UnimodularMultiplicative::UnimodularMultiplicative(u64 order, u64 limit,
                                                   std::vector<std::uint32_t> prime_exponents,
                                                   std::string label)
    : D_(order), limit_(limit), by_n_(std::move(prime_exponents)), label_(std::move(label)) {
  if (by_n_.size() != limit + 1)
    throw std::invalid_argument("UnimodularMultiplicative: value table must cover 0..limit");
}

CharValue UnimodularMultiplicative::at_prime(u64 p) const {
  if (p > limit_) throw std::out_of_range("UnimodularMultiplicative: prime beyond limit");
  const std::uint32_t v = by_n_[p];
  return v == kZero32 ? CharValue::zero(D_) : CharValue{v, D_};
}

CharValue UnimodularMultiplicative::operator()(u64 n) const {
  CharValue v{0, D_};
  for (const auto& pp : factorize(n).factors) {
    const CharValue vp = at_prime(pp.p);
    if (vp.is_zero()) return CharValue::zero(D_);
    v.exponent = (v.exponent + mulmod(vp.exponent, pp.k, D_)) % D_;
  }
  return v;
}

std::vector<std::uint32_t> UnimodularMultiplicative::table(u64 N) const {
  if (N > limit_) throw std::out_of_range("UnimodularMultiplicative: table beyond limit");
  std::vector<std::uint32_t> vals(N + 1, 0);
  std::vector<std::uint32_t> spf(N + 1, 0);
  std::vector<u64> primes;
  if (N >= 1) vals[1] = 0;
  for (u64 n = 2; n <= N; ++n) {
    if (spf[n] == 0) {
      spf[n] = static_cast<std::uint32_t>(n);
      primes.push_back(n);
      vals[n] = by_n_[n];
    } else {
      const u64 p = spf[n];
      const std::uint32_t a = vals[p], b = vals[n / p];
      vals[n] = (a == kZero32 || b == kZero32) ? kZero32
                                               : static_cast<std::uint32_t>((u64{a} + b) % D_);
    }
    for (u64 p : primes) {
      if (p > spf[n] || p * n > N) break;
      spf[p * n] = static_cast<std::uint32_t>(p);
    }
  }
  return vals;
}

UnimodularMultiplicative UnimodularMultiplicative::power(i64 l) const {
  const i64 D = static_cast<i64>(D_);
  const u64 lr = static_cast<u64>(((l % D) + D) % D);
  std::vector<std::uint32_t> vals(by_n_.size(), 0);
  for (std::size_t n = 0; n < by_n_.size(); ++n)
    vals[n] = by_n_[n] == kZero32 ? kZero32 : static_cast<std::uint32_t>(mulmod(by_n_[n], lr, D_));
  return UnimodularMultiplicative(D_, limit_, std::move(vals),
                                  label_ + "^" + std::to_string(l));
}

namespace {

std::vector<std::uint32_t> prime_values(const DirichletCharacter& chi, u64 limit, u64 scale) {
  std::vector<std::uint32_t> vals(limit + 1, 0);
  for (u64 p : sieve_primes(limit).primes) {
    const CharValue v = chi(p);
    vals[p] = v.is_zero() ? kZero32 : static_cast<std::uint32_t>(v.exponent * scale);
  }
  return vals;
}

}  // namespace

UnimodularMultiplicative as_multiplicative(const DirichletCharacter& chi, u64 limit) {
  return UnimodularMultiplicative(chi.order(), limit, prime_values(chi, limit, 1), describe(chi));
}

UnimodularMultiplicative one(u64 limit) {
  return UnimodularMultiplicative(1, limit, std::vector<std::uint32_t>(limit + 1, 0), "1");
}

UnimodularMultiplicative product_with_conjugate(const DirichletCharacter& chi,
                                                const DirichletCharacter& xi, u64 limit) {
  const u64 D = std::lcm(chi.order(), xi.order());
  auto a = prime_values(chi, limit, D / chi.order());
  const auto b = prime_values(xi, limit, D / xi.order());
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (a[n] == kZero32 || b[n] == kZero32)
      a[n] = kZero32;
    else
      a[n] = static_cast<std::uint32_t>((u64{a[n]} + D - b[n]) % D);
  }
  return UnimodularMultiplicative(D, limit, std::move(a),
                                  describe(chi) + "*conj(" + describe(xi) + ")");
}

std::string describe(const DirichletCharacter& chi) {
  std::ostringstream os;
  os << "chi[" << chi.modulus() << "," << chi.index() << "]";
  return os.str();
}

}  // namespace charsum
