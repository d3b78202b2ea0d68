#include "charsum/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "charsum/numeric.hpp"
#include "charsum/sums.hpp"

namespace charsum {

double normsq(double t) {
  const double f = dist_to_nearest_integer(t);
  return f * f;
}

FourierValue fourier_normsq(double t, u64 V) {
  if (V == 0) throw std::invalid_argument("fourier_normsq: V must be >= 1");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  CompensatedSum s;
  // smallest terms first
  for (u64 v = V; v >= 1; --v) {
    const double vt = static_cast<double>(v) * t;
    const double frac = vt - std::floor(vt);
    const double vd = static_cast<double>(v);
    const double c = std::cos(2.0 * std::numbers::pi * frac) / (vd * vd);
    s.add(v % 2 ? -c : c);
  }
  return {1.0 / 12.0 + s.value() / pi2, 1.0 / (pi2 * static_cast<double>(V))};
}

namespace {

double sq_dist_frac(u64 k, u64 r) {
  const double m = static_cast<double>(std::min(k, r - k)) / static_cast<double>(r);
  return m * m;
}

double delta_direct(const std::vector<double>& sigma, u64 r) {
  const u64 d = sigma.size();
  CompensatedSum outer;
  for (u64 l = 1; l <= r; ++l) {
    CompensatedSum inner;
    for (u64 j = 1; j < d; ++j) {
      if (sigma[j] == 0.0) continue;
      inner.add((sq_dist_frac(j * l % r, r) - 1.0 / 12.0) * sigma[j]);
    }
    const double v = inner.value();
    outer.add(v * v);
  }
  return outer.value() / static_cast<double>(r);
}

double delta_stratified(const std::vector<double>& sigma, u64 r, u64 M) {
  const u64 d = sigma.size();
  const double pi = std::numbers::pi;
  CompensatedSum total;
  for (u64 lambda : divisors(r)) {
    const u64 R = r / lambda;
    std::vector<u64> units;
    std::vector<long long> slot(R, -1);
    for (u64 s = 0; s < R; ++s)
      if (std::gcd(s, R) == 1) {
        slot[s] = static_cast<long long>(units.size());
        units.push_back(s);
      }
    const std::size_t nu = units.size();

    // G[c] = sum over 1 <= |u| <= M R, (u, R) = 1, u = c mod R of sign(u) / u^2,
    // with sign +1 (even f) or (-1)^u (odd f)
    std::vector<CompensatedSum> g_even(nu), g_odd(nu);
    for (u64 u = M * R; u >= 1; --u) {
      if (std::gcd(u, R) != 1) continue;
      const double ud = static_cast<double>(u);
      const double w = 1.0 / (ud * ud);
      const double sw = u % 2 ? -w : w;
      for (u64 c : {u % R, (R - u % R) % R}) {
        g_even[slot[c]].add(w);
        g_odd[slot[c]].add(sw);
      }
    }

    std::vector<double> B(nu, 0.0);
    for (u64 e : divisors(lambda)) {
      const u64 f = lambda / e;
      std::vector<double> T(nu, 0.0);
      for (u64 J = 1; J * e < d; ++J)
        if (std::gcd(J, r / e) == 1) T[slot[J % R]] += sigma[J * e];
      const auto& G = f % 2 ? g_odd : g_even;
      const double scale = 1.0 / static_cast<double>(f * f);
      for (std::size_t a = 0; a < nu; ++a) {
        if (T[a] == 0.0) continue;
        for (std::size_t b = 0; b < nu; ++b)
          B[slot[units[a] * units[b] % R]] += scale * T[a] * G[b].value();
      }
    }
    for (double v : B) total.add(v * v);
  }
  return total.value() / (4.0 * pi * pi * pi * pi);
}

}  // namespace

DeltaResult variance_delta(const std::vector<double>& sigma, u64 r, DeltaMethod method, u64 M) {
  const u64 d = sigma.size();
  if (d == 0 || r == 0 || d % r != 0)
    throw std::invalid_argument("variance_delta: r must divide d");
  DeltaResult res;
  CompensatedSum tot;
  for (u64 j = 1; j < d; ++j) tot.add(sigma[j]);
  res.sigma_total = tot.value();
  if (method == DeltaMethod::Direct) {
    res.value = delta_direct(sigma, r);
  } else {
    if (M == 0) throw std::invalid_argument("variance_delta: M must be >= 1");
    res.value = delta_stratified(sigma, r, M);
    res.budget = res.sigma_total * res.sigma_total / static_cast<double>(M);
  }
  return res;
}

DeltaResult variance_delta(const SigmaProfile& sigma, u64 r, DeltaMethod method, u64 M) {
  return variance_delta(sigma.sigma, r, method, M);
}

namespace {

struct DivTerm {
  u64 a;
  int mu;  // mu(t / a)
};

// a | t with t/a squarefree
std::vector<DivTerm> squarefree_cofactors(const FactoredInteger& t) {
  std::vector<DivTerm> out{{t.value, 1}};
  for (const auto& pp : t.factors) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back({out[i].a / pp.p, -out[i].mu});
  }
  return out;
}

Rational to_rational(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 m = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  boost::multiprecision::cpp_int c = static_cast<u64>(m >> 64);
  c <<= 64;
  c += static_cast<u64>(m);
  return Rational(neg ? -c : c);
}

struct IntCorrelation {
  __int128 sum;   // t1 t2 times the correlation sum
  __int128 main;  // t1 t2 times the main term
};

IntCorrelation correlation_scaled(const std::vector<DivTerm>& d1, const std::vector<DivTerm>& d2,
                                  u64 t1, u64 t2, u64 phi_t, u64 x) {
  __int128 s = 0;
  for (const auto& u : d1)
    for (const auto& v : d2) {
      const u64 l = std::lcm(u.a, v.a);
      s += static_cast<__int128>(u.mu * v.mu) * u.a * v.a * static_cast<__int128>(x / l);
    }
  return {s, t1 == t2 ? static_cast<__int128>(x) * phi_t : 0};
}

}  // namespace

SmallRational mean_zero_f(const FactoredInteger& t, u64 n) {
  if (n == 0) throw std::invalid_argument("mean_zero_f: n must be >= 1");
  SmallRational s = 0;
  for (const auto& term : squarefree_cofactors(t))
    if (n % term.a == 0) s += SmallRational(term.mu, static_cast<i64>(t.value / term.a));
  return s;
}

FtCorrelation ft_correlation(const FactoredInteger& t1, const FactoredInteger& t2, u64 x) {
  const auto c = correlation_scaled(squarefree_cofactors(t1), squarefree_cofactors(t2), t1.value,
                                    t2.value, totient(t1), x);
  const __int128 den = static_cast<__int128>(t1.value) * t2.value;
  FtCorrelation r;
  r.sum = to_rational(c.sum) / to_rational(den);
  r.main = to_rational(c.main) / to_rational(den);
  const __int128 dev = c.sum > c.main ? c.sum - c.main : c.main - c.sum;
  r.deviation = static_cast<double>(dev) / static_cast<double>(den);
  r.bound = divisor_count(t1) * divisor_count(t2);
  r.ok = dev <= static_cast<__int128>(r.bound) * den;
  return r;
}

TkzSet enumerate_tkz(const DirichletCharacter& chi, u64 j0, u64 k, u64 z) {
  TkzSet s;
  s.k = k;
  s.z = z;
  s.j0 = j0 % chi.order();
  const auto primes = primes_at_least(std::max<u64>(z, 2));
  for (std::size_t i = 0; i < primes->count_up_to(static_cast<double>(z)); ++i) {
    const u64 p = primes->primes[i];
    const CharValue v = chi(p);
    if (!v.is_zero() && v.exponent == s.j0) s.level_primes.push_back(p);
  }
  if (k == 0) {
    s.members.push_back(FactoredInteger{});
    return s;
  }
  // nondecreasing index sequences i_1 <= ... <= i_k
  const std::size_t n = s.level_primes.size();
  if (n == 0) return s;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    FactoredInteger t;
    for (std::size_t i : idx) {
      const u64 p = s.level_primes[i];
      t.value *= p;
      if (!t.factors.empty() && t.factors.back().p == p)
        ++t.factors.back().k;
      else
        t.factors.push_back({p, 1});
    }
    s.members.push_back(std::move(t));
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - 1) --pos;
    if (pos == 0) break;
    const std::size_t v = idx[pos - 1] + 1;
    for (std::size_t i = pos - 1; i < k; ++i) idx[i] = v;
  }
  std::sort(s.members.begin(), s.members.end(),
            [](const FactoredInteger& a, const FactoredInteger& b) { return a.value < b.value; });
  return s;
}

namespace {

struct MemberData {
  std::vector<DivTerm> terms;
  u64 t;
  u64 phi;
  u64 tau;
};

std::vector<MemberData> member_data(const TkzSet& set) {
  std::vector<MemberData> out;
  out.reserve(set.members.size());
  for (const auto& m : set.members)
    out.push_back({squarefree_cofactors(m), m.value, totient(m), divisor_count(m)});
  return out;
}

void sweep_row(const std::vector<MemberData>& md, std::size_t i, u64 x, u64& violations,
               double& max_ratio) {
  for (std::size_t j = 0; j < md.size(); ++j) {
    const auto& a = md[i];
    const auto& b = md[j];
    const auto c = correlation_scaled(a.terms, b.terms, a.t, b.t, a.phi, x);
    const __int128 dev = c.sum > c.main ? c.sum - c.main : c.main - c.sum;
    const __int128 lim = static_cast<__int128>(a.tau * b.tau) * a.t * b.t;
    if (dev > lim) ++violations;
    max_ratio = std::max(max_ratio, static_cast<double>(dev) / static_cast<double>(lim));
  }
}

}  // namespace

CorrelationSweep ft_correlation_sweep_serial(const TkzSet& set, u64 x) {
  const auto md = member_data(set);
  CorrelationSweep r;
  r.pairs = md.size() * md.size();
  for (std::size_t i = 0; i < md.size(); ++i) sweep_row(md, i, x, r.violations, r.max_ratio);
  return r;
}

CorrelationSweep ft_correlation_sweep(const TkzSet& set, u64 x) {
  const auto md = member_data(set);
  CorrelationSweep r;
  r.pairs = md.size() * md.size();
  u64 violations = 0;
  double max_ratio = 0.0;
  const long long n = static_cast<long long>(md.size());
#pragma omp parallel for schedule(dynamic) reduction(+ : violations) reduction(max : max_ratio)
  for (long long i = 0; i < n; ++i) sweep_row(md, static_cast<std::size_t>(i), x, violations, max_ratio);
  r.violations = violations;
  r.max_ratio = max_ratio;
  return r;
}

AkzTerms akz_terms(const DirichletCharacter& chi, u64 g, u64 l, u64 j0, u64 k, u64 z, u64 x,
                   double y, double rho) {
  if (k == 0) throw std::invalid_argument("akz_terms: k must be >= 1");
  if (x < 2) throw std::invalid_argument("akz_terms: x must be >= 2");
  __int128 zk = 1;
  for (u64 i = 0; i < k && zk <= static_cast<__int128>(x); ++i) zk *= z;
  if (zk > static_cast<__int128>(x) || zk * zk * zk > static_cast<__int128>(x))
    throw std::invalid_argument("constraint violated: z^k > x^(1/3)");

  const TkzSet set = enumerate_tkz(chi, j0, k, z);
  const auto psi = chi.power(static_cast<i64>(g * l));
  auto h = [&](u64 n) {
    const CharValue v = psi(n);
    if (v.is_zero()) return std::complex<double>(0.0, 0.0);
    return v.complex() * std::polar(1.0, -y * std::log(static_cast<double>(n)));
  };

  // H(N) = sum_{m <= N} h(m) at every cutoff floor(x / a)
  std::vector<u64> cuts{x};
  std::vector<std::vector<DivTerm>> terms;
  for (const auto& t : set.members) {
    terms.push_back(squarefree_cofactors(t));
    for (const auto& dt : terms.back()) cuts.push_back(x / dt.a);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<std::complex<double>> H(cuts.size());
  {
    CompensatedComplex run;
    u64 n = 1;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      for (; n <= cuts[i]; ++n) run.add(h(n));
      H[i] = run.value();
    }
  }
  auto H_at = [&](u64 N) {
    return H[std::lower_bound(cuts.begin(), cuts.end(), N) - cuts.begin()];
  };

  const double xd = static_cast<double>(x);
  const double lx = std::log(xd);
  AkzTerms res;
  res.members = set.members.size();
  res.mean = H_at(x) / xd;
  CompensatedComplex A, SM;
  CompensatedSum SD;
  for (std::size_t i = 0; i < set.members.size(); ++i) {
    const double t = static_cast<double>(set.members[i].value);
    for (const auto& dt : terms[i]) {
      const auto ha = h(dt.a);
      const double ad = static_cast<double>(dt.a);
      A.add(static_cast<double>(dt.mu) * ha / t);
      SM.add(static_cast<double>(dt.mu) * ha * (ad / xd) * H_at(x / dt.a) / t);
      const double l3a = std::log(3.0 * ad);
      const double lr = std::log(lx / l3a);
      SD.add(std::pow(l3a / lx, rho) * lr * lr / t);
    }
  }
  res.A = A.value();
  res.sum_M = SM.value();
  res.sum_delta = SD.value();
  res.residual = std::abs(res.A * res.mean - res.sum_M);
  res.ratio = res.sum_delta > 0 ? res.residual / res.sum_delta : 0.0;
  return res;
}

namespace {

template <class ValueAt>
std::complex<double> theta_impl(u64 D, u64 j0, double z, double y, ValueAt value_at) {
  j0 %= D;
  CompensatedComplex acc;
  CompensatedSum sigma;
  if (z >= 2) {
    const auto primes = primes_at_least(static_cast<u64>(z));
    for (std::size_t i = 0; i < primes->count_up_to(z); ++i) {
      const u64 p = primes->primes[i];
      const CharValue v = value_at(p);
      if (v.is_zero() || v.exponent != j0) continue;
      const double pd = static_cast<double>(p);
      sigma.add(1.0 / pd);
      acc.add(std::polar(1.0 / pd, -y * std::log(pd)));
    }
  }
  if (sigma.value() <= 0.0) throw std::domain_error("theta_j0: empty level set");
  return acc.value() / sigma.value();
}

}  // namespace

std::complex<double> theta_j0(const DirichletCharacter& chi, u64 j0, double z, double y) {
  return theta_impl(chi.order(), j0, z, y, [&](u64 p) { return chi(p); });
}

std::complex<double> theta_j0(const UnimodularMultiplicative& f, u64 j0, double z, double y) {
  if (z > static_cast<double>(f.limit()) + 0.5)
    throw std::out_of_range("theta_j0: z beyond the function's prime limit");
  return theta_impl(f.order(), j0, z, y, [&](u64 p) { return f.at_prime(p); });
}

OmegaFunction::OmegaFunction(u64 j0, UnimodularMultiplicative carrier)
    : j0_(j0 % carrier.order()), f_(std::move(carrier)) {}

bool OmegaFunction::counts(u64 p) const {
  const CharValue v = f_.at_prime(p);
  return !v.is_zero() && v.exponent == j0_;
}

u64 OmegaFunction::operator()(u64 n) const {
  if (n == 0) throw std::invalid_argument("Omega: n must be >= 1");
  u64 s = 0;
  for (const auto& pp : factorize(n).factors)
    if (counts(pp.p)) s += pp.k;
  return s;
}

std::vector<std::uint8_t> OmegaFunction::table(u64 N) const {
  if (N > limit()) throw std::out_of_range("Omega::table: N beyond the carrier limit");
  std::vector<std::uint8_t> t(N + 1, 0);
  if (N < 2) return t;
  const auto primes = primes_at_least(N);
  for (std::size_t i = 0; i < primes->count_up_to(static_cast<double>(N)); ++i) {
    const u64 p = primes->primes[i];
    if (!counts(p)) continue;
    for (u64 pk = p; pk <= N; pk *= p) {
      for (u64 m = pk; m <= N; m += pk) ++t[m];
      if (pk > N / p) break;
    }
  }
  return t;
}

OmegaMoments omega_moments(const OmegaFunction& omega, u64 x, Weighting weighting) {
  if (x < 2) throw std::invalid_argument("omega_moments: x must be >= 2");
  const auto tab = omega.table(x);
  OmegaMoments m;
  {
    CompensatedSum s;
    const auto primes = primes_at_least(x);
    for (std::size_t i = 0; i < primes->count_up_to(static_cast<double>(x)); ++i)
      if (omega.counts(primes->primes[i])) s.add(1.0 / static_cast<double>(primes->primes[i]));
    m.sigma = s.value();
  }
  CompensatedSum s1, s2, sq;
  for (u64 n = 1; n <= x; ++n) {
    const double w = weighting == Weighting::Cesaro ? 1.0 : 1.0 / static_cast<double>(n);
    const double o = tab[n];
    s1.add(o * w);
    s2.add((o - m.sigma) * (o - m.sigma) * w);
    sq.add(o * o * w);
  }
  const double norm = weighting == Weighting::Cesaro ? static_cast<double>(x)
                                                     : std::log(static_cast<double>(x));
  m.mean = s1.value() / norm;
  m.second = s2.value() / norm;
  if (m.sigma > 0) {
    m.ratio = m.second / m.sigma;
    if (weighting == Weighting::Logarithmic) {
      m.c1 = (s1.value() / (m.sigma * norm) - 1.0) * m.sigma;
      m.c2 = (sq.value() / (m.sigma * m.sigma * norm) - 1.0) * m.sigma;
    }
  }
  return m;
}

RotationResidual rotation_residual(const UnimodularMultiplicative& psi, u64 l, u64 j0, u64 N) {
  if (N < 2) throw std::invalid_argument("rotation_residual: N must be >= 2");
  const u64 D = psi.order();
  const SigmaProfile sp = sigma_profile(psi, static_cast<double>(N));
  const double sig = sp.sigma[j0 % D];
  if (sig <= 0.0) throw std::domain_error("rotation_residual: empty level set");
  RotationResidual r;
  const u64 k = (j0 % D) * (l % D) % D;
  r.rotation = k == 0 ? 0.0 : std::abs(1.0 - CharValue{k, D}.complex());
  r.L = log_sums(psi.power(static_cast<i64>(l)), {N}).values[0];
  r.lhs = r.rotation * std::abs(r.L);
  r.budget = std::log(static_cast<double>(N)) / std::sqrt(sig);
  r.ratio = r.lhs / r.budget;
  return r;
}

}  // namespace charsum
