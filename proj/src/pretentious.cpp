#include "charsum/pretentious.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "charsum/numeric.hpp"

namespace charsum {

namespace {

template <class ValueAt>
SigmaProfile profile(u64 d, double y, ValueAt value_at) {
  SigmaProfile s;
  s.d = d;
  s.y = y;
  std::vector<CompensatedSum> acc(d);
  if (y >= 2) {
    const auto primes = primes_at_least(static_cast<u64>(y));
    const std::size_t n = primes->count_up_to(y);
    for (std::size_t i = 0; i < n; ++i) {
      const u64 p = primes->primes[i];
      const CharValue v = value_at(p);
      if (!v.is_zero()) acc[v.exponent].add(1.0 / static_cast<double>(p));
    }
  }
  s.sigma.resize(d);
  CompensatedSum total;
  for (u64 j = 0; j < d; ++j) {
    s.sigma[j] = acc[j].value();
    if (j == 0) continue;
    total.add(s.sigma[j]);
    if (s.j_max == 0 || s.sigma[j] > s.sigma[s.j_max]) s.j_max = j;
  }
  s.total = total.value();
  return s;
}

const PrimeTable& primes_for(double y, std::shared_ptr<const PrimeTable>& hold) {
  hold = primes_at_least(y >= 2 ? static_cast<u64>(y) : 2);
  return *hold;
}

double cos_turns(u64 a, u64 D, u64 b, u64 E) {
  // cos(2 pi (a/D - b/E)) evaluated on the exact reduced fraction
  const u64 L = std::lcm(D, E);
  const u64 num = (a * (L / D) + L - (b * (L / E)) % L) % L;
  return CharValue{num, L}.complex().real();
}

}  // namespace

SigmaProfile sigma_profile(const DirichletCharacter& chi, double y) {
  return profile(chi.order(), y, [&](u64 p) { return chi(p); });
}

SigmaProfile sigma_profile(const UnimodularMultiplicative& f, double y) {
  if (y > static_cast<double>(f.limit()) + 0.5)
    throw std::out_of_range("sigma_profile: y beyond the function's prime limit");
  return profile(f.order(), y, [&](u64 p) { return f.at_prime(p); });
}

const SigmaProfile& cached_sigma_profile(const DirichletCharacter& chi, double y) {
  static std::mutex mu;
  static std::map<std::tuple<u64, u64, double>, SigmaProfile> cache;
  const auto key = std::make_tuple(chi.modulus(), chi.index(), y);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  SigmaProfile s = sigma_profile(chi, y);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(s)).first->second;
}

double distance_sq(const UnimodularMultiplicative& f, const UnimodularMultiplicative& g, double y) {
  std::shared_ptr<const PrimeTable> hold;
  const PrimeTable& pt = primes_for(y, hold);
  const std::size_t n = pt.count_up_to(y);
  CompensatedSum s;
  for (std::size_t i = 0; i < n; ++i) {
    const u64 p = pt.primes[i];
    const CharValue a = f.at_prime(p), b = g.at_prime(p);
    const double re =
        (a.is_zero() || b.is_zero()) ? 0.0 : cos_turns(a.exponent, a.order, b.exponent, b.order);
    s.add((1.0 - re) / static_cast<double>(p));
  }
  return s.value();
}

std::optional<Rational> distance_sq_exact(const UnimodularMultiplicative& f,
                                          const UnimodularMultiplicative& g, double y) {
  if (y > 1e4) return std::nullopt;
  std::shared_ptr<const PrimeTable> hold;
  const PrimeTable& pt = primes_for(y, hold);
  const std::size_t n = pt.count_up_to(y);
  Rational s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const u64 p = pt.primes[i];
    const CharValue a = f.at_prime(p), b = g.at_prime(p);
    Rational one_minus_cos = 1;
    if (!a.is_zero() && !b.is_zero()) {
      const u64 L = std::lcm(a.order, b.order);
      u64 num = (a.exponent * (L / a.order) + L - (b.exponent * (L / b.order)) % L) % L;
      const u64 gg = std::gcd(num, L);
      const u64 den = L / gg;
      num /= gg;
      switch (den) {
        case 1: one_minus_cos = 0; break;
        case 2: one_minus_cos = 2; break;
        case 3: one_minus_cos = Rational(3, 2); break;
        case 4: one_minus_cos = 1; break;
        case 6: one_minus_cos = Rational(1, 2); break;
        default: return std::nullopt;
      }
    }
    s += one_minus_cos / Rational(p);
  }
  return s;
}

double max_power_distance_sq(const UnimodularMultiplicative& psi, double y, u64 lmax) {
  const SigmaProfile sp = sigma_profile(psi, y);
  std::shared_ptr<const PrimeTable> hold;
  const PrimeTable& pt = primes_for(y, hold);
  CompensatedSum zeros;
  const std::size_t n = pt.count_up_to(y);
  for (std::size_t i = 0; i < n; ++i)
    if (psi.at_prime(pt.primes[i]).is_zero()) zeros.add(1.0 / static_cast<double>(pt.primes[i]));
  const u64 D = sp.d;
  const auto roots = roots_of_unity(D);
  double best = 0.0;
  for (u64 l = 1; l <= lmax; ++l) {
    CompensatedSum s;
    s.add(zeros.value());
    for (u64 j = 1; j < D; ++j)
      if (sp.sigma[j] != 0.0) s.add((1.0 - roots[mulmod(j, l, D)].real()) * sp.sigma[j]);
    best = std::max(best, s.value());
  }
  return best;
}

double distance_to_twist_sq(const UnimodularMultiplicative& f, double t, double y) {
  std::shared_ptr<const PrimeTable> hold;
  const PrimeTable& pt = primes_for(y, hold);
  const std::size_t n = pt.count_up_to(y);
  CompensatedSum s;
  for (std::size_t i = 0; i < n; ++i) {
    const u64 p = pt.primes[i];
    const CharValue a = f.at_prime(p);
    double re = 0.0;
    if (!a.is_zero()) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(a.exponent) /
                               static_cast<double>(a.order) -
                           t * std::log(static_cast<double>(p));
      re = std::cos(angle);
    }
    s.add((1.0 - re) / static_cast<double>(p));
  }
  return s.value();
}

double log_euler_product(const UnimodularMultiplicative& f, double x, double y) {
  std::shared_ptr<const PrimeTable> hold;
  const PrimeTable& pt = primes_for(x, hold);
  const std::size_t n = pt.count_up_to(x);
  CompensatedSum s;
  for (std::size_t i = 0; i < n; ++i) {
    const u64 p = pt.primes[i];
    const CharValue a = f.at_prime(p);
    if (a.is_zero()) continue;
    const double pd = static_cast<double>(p);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(a.exponent) /
                             static_cast<double>(a.order) -
                         y * std::log(pd);
    // |1 - z|^2 with z = f(p) p^{-1-iy}
    const double re = std::cos(angle) / pd, im = std::sin(angle) / pd;
    s.add(-0.5 * std::log1p(-2.0 * re + re * re + im * im));
  }
  return s.value();
}

TwistResult twist_search(const UnimodularMultiplicative& f, double x, double window,
                         double refine) {
  const double lx = std::log(x);
  if (!(x > 1.0)) throw std::invalid_argument("twist_search: x must exceed 1");
  if (window > 2.0 * lx * (1 + 1e-12))
    throw std::invalid_argument("twist_search: window exceeds 2 log x");
  TwistResult r;
  r.window = window;
  r.step = std::numbers::pi / (8.0 * lx) / refine;
  auto obj = [&](double y) { return log_euler_product(f, x, y); };

  double best_y = 0.0;
  double best = obj(0.0);
  r.grid_points = 1;
  const long long kmax = static_cast<long long>(std::floor(window / r.step + 1e-9));
  for (long long k = 1; k <= kmax; ++k) {
    for (int sign : {1, -1}) {
      const double y = sign * k * r.step;
      const double v = obj(y);
      ++r.grid_points;
      if (v > best) {
        best = v;
        best_y = y;
      }
    }
  }

  // golden-section steps on [best_y - step, best_y + step], kept inside the window
  double lo = std::max(-window, best_y - r.step);
  double hi = std::min(window, best_y + r.step);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - invphi * (hi - lo), dpt = lo + invphi * (hi - lo);
  double fc = obj(c), fd = obj(dpt);
  for (int it = 0; it < 3; ++it) {
    if (fc > best) {
      best = fc;
      best_y = c;
    }
    if (fd > best) {
      best = fd;
      best_y = dpt;
    }
    if (fc >= fd) {
      hi = dpt;
      dpt = c;
      fd = fc;
      c = hi - invphi * (hi - lo);
      fc = obj(c);
    } else {
      lo = c;
      c = dpt;
      fc = fd;
      dpt = lo + invphi * (hi - lo);
      fd = obj(dpt);
    }
  }
  if (fc > best) {
    best = fc;
    best_y = c;
  }
  if (fd > best) {
    best = fd;
    best_y = dpt;
  }

  r.y_search = best_y;
  r.y = best_y;
  if (std::abs(best_y) > 0.5 * lx) {
    r.y = 0.0;
    r.zeroed = true;
    best = obj(0.0);
  }
  r.objective = std::exp(best);
  return r;
}

double dist_to_nearest_integer(double t) { return std::abs(t - std::nearbyint(t)); }

ToFE tofe_sides(const SigmaProfile& sigma, u64 l, u64 r) {
  if (r == 0 || sigma.d % r != 0) throw std::invalid_argument("tofe_sides: r must divide d");
  CompensatedSum lhs, rhs;
  for (u64 j = 1; j < sigma.d; ++j) {
    const u64 k = (j % r) * (l % r) % r;
    const double dist = static_cast<double>(std::min(k, r - k)) / static_cast<double>(r);
    lhs.add((1.0 - CharValue{k, r}.complex().real()) * sigma.sigma[j]);
    rhs.add(8.0 * dist * dist * sigma.sigma[j]);
  }
  return {lhs.value(), rhs.value()};
}

}  // namespace charsum
