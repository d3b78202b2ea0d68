#include "charsum/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "charsum/identities.hpp"
#include "charsum/numeric.hpp"
#include "charsum/pretentious.hpp"

namespace charsum {

BoundRow& BoundRow::param(std::string name, ParamValue v) {
  params.emplace_back(std::move(name), std::move(v));
  return *this;
}

const ParamValue* BoundRow::find(const std::string& name) const {
  for (const auto& [k, v] : params)
    if (k == name) return &v;
  return nullptr;
}

void BoundRow::finish() {
  if (rhs > 0.0)
    ratio = lhs / rhs;
  else
    ratio.reset();
}

BoundRow row_for(const std::string& suite, const DirichletCharacter& chi) {
  BoundRow r;
  r.suite = suite;
  r.q = chi.modulus();
  r.index = chi.index();
  r.d = chi.order();
  return r;
}

double loglog_ed(u64 d) { return std::log(1.0 + std::log(static_cast<double>(d))); }

namespace {

u64 max_count(const LevelCounts& lc) { return *std::max_element(lc.counts.begin(), lc.counts.end()); }

double as_double(u64 v) { return static_cast<double>(v); }

}  // namespace

BoundRow orthogonality_check(const DirichletCharacter& chi) {
  BoundRow r = row_for("orthogonality", chi);
  const u64 q = chi.modulus();
  const u64 phi = chi.group()->size();
  const LevelCounts lc = level_counts(chi, q);
  const u64 d = chi.order();
  bool ok = phi % d == 0 && lc.noncoprime == q - phi;
  double worst = 0.0;
  for (u64 c : lc.counts) {
    worst = std::max(worst, std::abs(as_double(c) - as_double(phi) / as_double(d)));
    if (c * d != phi) ok = false;
  }
  r.param("x", static_cast<i64>(q)).param("expected", as_double(phi) / as_double(d));
  r.lhs = worst;
  r.rhs = 0.0;
  r.pass = ok;
  r.finish();
  return r;
}

BoundRow pair_count_identity(const DirichletCharacter& chi, u64 x) {
  BoundRow r = row_for("pair-count", chi);
  const LevelCounts lc = level_counts(chi, x);
  r.lhs = mean_square_over_powers(sums_all_powers(lc));
  const u64 exact = sum_of_squared_counts(lc);
  r.rhs = as_double(exact);
  r.param("x", static_cast<i64>(x)).param("pairs", static_cast<i64>(exact));
  r.pass = std::abs(r.lhs - r.rhs) <= 1e-6 * std::max(1.0, r.rhs);
  r.finish();
  return r;
}

BoundRow passto_pow_check(const DirichletCharacter& chi, const LevelCounts& lc) {
  BoundRow r = row_for("passto-pow", chi);
  const u64 d = lc.d;
  const u64 md = max_count(lc);
  u64 best = md, best_r = d;
  bool ok = true;
  for (u64 rr : divisors(d)) {
    // levels of chi^{d/r} are the classes j mod r
    std::vector<u64> agg(rr, 0);
    for (u64 j = 0; j < d; ++j) agg[j % rr] += lc.counts[j];
    const u64 mr = *std::max_element(agg.begin(), agg.end());
    if (md > mr) ok = false;
    if (rr == d && mr != md) ok = false;
    if (mr < best) {
      best = mr;
      best_r = rr;
    }
  }
  r.param("x", static_cast<i64>(lc.x)).param("argmin_r", static_cast<i64>(best_r));
  r.lhs = as_double(md);
  r.rhs = as_double(best);
  r.pass = ok;
  r.finish();
  return r;
}

BoundRow passto_pow_check(const DirichletCharacter& chi, u64 x) {
  return passto_pow_check(chi, level_counts(chi, x));
}

namespace {

double et_rhs(u64 x, u64 d, u64 K, double weighted) {
  const double xd = as_double(x);
  return xd / as_double(d) + xd / as_double(K + 1) + (2.0 / 3.0) * weighted;
}

bool et_holds(double lhs, double rhs) { return lhs <= rhs * (1.0 + 1e-12); }

}  // namespace

std::vector<BoundRow> et_level_check(const DirichletCharacter& chi, u64 x, std::span<const u64> Ks) {
  const LevelCounts lc = level_counts(chi, x);
  const SumsTable st = sums_all_powers(lc);
  const u64 d = chi.order();
  const double lhs = as_double(max_count(lc));
  std::vector<BoundRow> rows;
  for (u64 K : Ks) {
    if (K == 0) throw std::invalid_argument("et_level_check: K must be >= 1");
    CompensatedSum w;
    for (u64 k = 1; k <= K; ++k) w.add(std::abs(st.values[k % d]) / as_double(k));
    BoundRow r = row_for("et-level", chi);
    r.lhs = lhs;
    r.rhs = et_rhs(x, d, K, w.value());
    r.param("x", static_cast<i64>(x)).param("K", static_cast<i64>(K));
    r.param("slack", r.rhs - r.lhs);
    r.pass = et_holds(r.lhs, r.rhs);
    r.finish();
    rows.push_back(std::move(r));
  }
  return rows;
}

BoundRow et_level_check(const DirichletCharacter& chi, u64 x, u64 K) {
  const u64 ks[] = {K};
  return et_level_check(chi, x, ks).front();
}

void et_level_sweep_modulus(u64 q, std::span<const u64> xs, std::span<const u64> Ks, EtSweep& acc) {
  const auto group = build_group(q);
  const auto& comps = group->components();
  const std::size_t rank = comps.size();
  std::vector<u64> ks(Ks.begin(), Ks.end());
  std::sort(ks.begin(), ks.end());
  const u64 kmax = ks.empty() ? 0 : ks.back();
  std::vector<bool> seen(group->size(), false);
  std::vector<u64> e(rank, 0);
  for (u64 idx = 0; idx < group->size(); ++idx) {
    if (!seen[idx]) {
      DirichletCharacter chi(group, e);
      const u64 d = chi.order();
      std::vector<u64> units;
      for (u64 a = 1; a <= d; ++a) {
        if (std::gcd(a, d) != 1) continue;
        units.push_back(a % d);
        u64 j = 0;
        for (std::size_t i = 0; i < rank; ++i) j = j * comps[i].order + (a * e[i]) % comps[i].order;
        seen[j] = true;
      }
      acc.characters += units.size();
      for (u64 x : xs) {
        const LevelCounts lc = level_counts(chi, x);
        const SumsTable st = sums_all_powers(lc);
        const double lhs = as_double(max_count(lc));
        std::vector<double> absS(d);
        for (u64 l = 0; l < d; ++l) absS[l] = std::abs(st.values[l]);
        for (u64 a : units) {
          CompensatedSum w;
          std::size_t next = 0;
          for (u64 k = 1; k <= kmax; ++k) {
            w.add(absS[(a * k) % d] / as_double(k));
            while (next < ks.size() && ks[next] == k) {
              const double rhs = et_rhs(x, d, k, w.value());
              ++acc.checks;
              if (!et_holds(lhs, rhs)) ++acc.violations;
              if (lhs / rhs > acc.max_ratio) {
                acc.max_ratio = lhs / rhs;
                acc.worst_q = q;
                acc.worst_index = chi.power(static_cast<i64>(a)).index();
                acc.worst_x = x;
                acc.worst_K = k;
              }
              ++next;
            }
          }
        }
      }
    }
    for (std::size_t i = rank; i-- > 0;) {
      if (++e[i] < comps[i].order) break;
      e[i] = 0;
    }
  }
}

BoundRow pv_check(const DirichletCharacter& chi) {
  BoundRow r = row_for("pv", chi);
  const double q = as_double(chi.modulus());
  const MaxEntry m = maximal_sum(chi);
  r.lhs = m.value;
  r.rhs = std::sqrt(q) * std::log(q);
  r.param("argmax_t", static_cast<i64>(m.argmax));
  if (chi.primitive() && !chi.principal())
    r.pass = r.lhs <= r.rhs;
  else
    r.note = "not primitive non-principal";
  r.finish();
  return r;
}

std::pair<double, double> min_twist_distance_sq(const UnimodularMultiplicative& f, double x,
                                                double T) {
  if (!(x > 1.0)) throw std::invalid_argument("min_twist_distance_sq: x must exceed 1");
  auto obj = [&](double t) { return distance_to_twist_sq(f, t, x); };
  const double step = std::numbers::pi / (8.0 * std::log(x));
  double best_t = 0.0, best = obj(0.0);
  const long long kmax = static_cast<long long>(std::floor(T / step + 1e-9));
  for (long long k = 1; k <= kmax; ++k)
    for (int sign : {1, -1}) {
      const double t = sign * k * step;
      const double v = obj(t);
      if (v < best) {
        best = v;
        best_t = t;
      }
    }
  double lo = std::max(-T, best_t - step), hi = std::min(T, best_t + step);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 3; ++it) {
    const double c = hi - invphi * (hi - lo), dd = lo + invphi * (hi - lo);
    const double fc = obj(c), fd = obj(dd);
    if (fc < best) {
      best = fc;
      best_t = c;
    }
    if (fd < best) {
      best = fd;
      best_t = dd;
    }
    if (fc <= fd)
      hi = dd;
    else
      lo = c;
  }
  return {best, best_t};
}

BoundRow hmt_check(const UnimodularMultiplicative& f, u64 x, double T) {
  if (x < 3) throw std::invalid_argument("hmt_check: x must be >= 3");
  if (!(T >= 1.0)) throw std::invalid_argument("hmt_check: T must be >= 1");
  BoundRow r;
  r.suite = "hmt";
  const SumsTable st = sums_all_powers(level_counts(f, x));
  const double xd = as_double(x);
  r.lhs = std::abs(st.values[1 % st.d]) / xd;
  const auto [M, t] = min_twist_distance_sq(f, xd, T);
  const double lx = std::log(xd);
  r.rhs = (M + 1.0) * std::exp(-M) + 1.0 / T + std::log(lx) / lx;
  r.param("x", static_cast<i64>(x)).param("T", T).param("M", M).param("t_star", t);
  r.finish();
  return r;
}

BoundRow hmt_check(const DirichletCharacter& chi, u64 x, double T) {
  BoundRow r = hmt_check(as_multiplicative(chi, x), x, T);
  r.q = chi.modulus();
  r.index = chi.index();
  r.d = chi.order();
  return r;
}

BoundRow gslog_check(const UnimodularMultiplicative& f, u64 x) {
  if (x < 1) throw std::invalid_argument("gslog_check: x must be >= 1");
  BoundRow r;
  r.suite = "gslog";
  std::vector<u64> cuts(x);
  std::iota(cuts.begin(), cuts.end(), u64{1});
  const LogSumSeries s = log_sums(f, std::move(cuts));
  const double xd = as_double(x);
  const double D2 = distance_sq(f, one(f.limit()), xd);
  r.lhs = s.max_abs;
  r.rhs = 1.0 + std::log(xd) * std::exp(-D2 / 2.0);
  r.param("x", static_cast<i64>(x)).param("D2", D2).param("argmax_y", static_cast<i64>(s.argmax));
  r.finish();
  return r;
}

BoundRow gslog_check(const DirichletCharacter& chi, u64 x) {
  BoundRow r = gslog_check(as_multiplicative(chi, x), x);
  r.q = chi.modulus();
  r.index = chi.index();
  r.d = chi.order();
  return r;
}

double theorem_delta(u64 q, u64 d, const XPolicy& p) {
  const double L = 1.0 + std::log(as_double(d));
  const double a = std::sqrt(std::log(L) / (p.c * L));
  const double b = std::pow(std::log(as_double(q)), -p.c);
  return std::min(1.0, std::max({a, b, p.delta_floor}));
}

u64 theorem_x(u64 q, double delta, const XPolicy& p) {
  const u64 above = cutoff(q, delta) + 1;
  return std::max(above, std::min(p.x_floor, q));
}

BoundRow thm1_row(const DirichletCharacter& chi, const Thm1Options& opt) {
  BoundRow r = row_for("thm1", chi);
  const u64 q = chi.modulus(), d = chi.order();
  const double delta = theorem_delta(q, d, opt.x);
  const u64 x = theorem_x(q, delta, opt.x);
  const LevelCounts lc = level_counts(chi, x);
  const SumsTable st = sums_all_powers(lc);
  const double xd = as_double(x);
  const double alt1 = std::abs(st.values[1 % d]) / xd;
  CompensatedSum s;
  for (u64 l = 1; l <= d; ++l) s.add(std::norm(st.values[l % d] / xd));
  const double alt2 = s.value() / as_double(d);
  const double principal = std::norm(st.values[0] / xd) / as_double(d);
  const double exponent = 1.0 / 6.0 - opt.tau;
  r.lhs = std::min(alt1, alt2);
  r.rhs = std::pow(loglog_ed(d), -exponent);
  r.param("x", static_cast<i64>(x)).param("delta", delta).param("tau", opt.tau);
  r.param("alt1", alt1).param("alt2", alt2).param("alt2_principal", principal);
  r.finish();
  return r;
}

namespace {

double thm2_delta(u64 q, u64 dz, double c1) {
  const double L = 1.0 + std::log(as_double(dz));
  return std::max(std::sqrt(std::log(L) / (c1 * L)), std::pow(std::log(as_double(q)), -c1));
}

std::vector<double> z_grid(u64 d, double step) {
  const double top = loglog_ed(d);
  std::vector<double> zs;
  for (int k = 0;; ++k) {
    const double z = 1.0 + k * step;
    if (z > top) break;
    zs.push_back(z);
  }
  if (2.0 - 1e-9 <= top) zs.push_back(2.0 - 1e-9);
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
  return zs;
}

}  // namespace

BoundRow thm2_row(const DirichletCharacter& chi, const Thm2Options& opt) {
  BoundRow r = row_for("thm2", chi);
  const u64 q = chi.modulus(), d = chi.order();
  XPolicy pol = opt.x;
  pol.c = opt.c1;
  const double delta1 = std::max(thm2_delta(q, d, opt.c1), pol.delta_floor);
  const u64 x = theorem_x(q, std::min(1.0, delta1), pol);
  const LevelCounts lc = level_counts(chi, x);
  const double xd = as_double(x);
  const double lx = std::log(xd), lq = std::log(as_double(q));
  r.lhs = as_double(max_count(lc)) / xd;

  const FactoredInteger fd = factorize(d);
  bool found = false;
  double best = 0.0, best_z = 0.0, best_delta = 0.0;
  u64 best_dz = 0;
  for (double z : z_grid(d, opt.z_step)) {
    const u64 dz = rough_part(fd, z);
    if (dz <= 1) continue;  // the error term is unbounded there
    const double dlt = thm2_delta(q, dz, opt.c1);
    if (!(lx > dlt * lq)) continue;
    const double v = 1.0 / z + std::pow(loglog_ed(dz), -opt.c2);
    if (!found || v < best) {
      found = true;
      best = v;
      best_z = z;
      best_dz = dz;
      best_delta = dlt;
    }
  }
  r.param("x", static_cast<i64>(x)).param("delta_1", delta1);
  r.param("empty_infimum", !found);
  r.param("z_star", best_z).param("d_z", static_cast<i64>(best_dz)).param("delta_z", best_delta);
  r.param("one_over_z", found ? 1.0 / best_z : 0.0);
  if (found)
    r.rhs = best;
  else
    r.note = "empty infimum";
  if ((d & (d - 1)) == 0) {
    const LevelCounts full = level_counts(chi, q);
    const double mq = as_double(max_count(full)) / as_double(q);
    r.param("pow2_M_over_q", mq);
    r.pass = mq <= 0.5 + opt.pow2_slack;
  }
  r.finish();
  return r;
}

BoundRow pplus_row(const DirichletCharacter& chi, const Thm2Options& opt) {
  BoundRow r = row_for("pplus", chi);
  const u64 q = chi.modulus(), d = chi.order();
  XPolicy pol = opt.x;
  pol.c = opt.c1;
  const double delta1 = std::max(thm2_delta(q, d, opt.c1), pol.delta_floor);
  const u64 x = theorem_x(q, std::min(1.0, delta1), pol);
  const u64 P = largest_prime_factor(factorize(d));
  const double delta = thm2_delta(q, P, opt.c1);
  const LevelCounts lc = level_counts(chi, x);
  const double xd = as_double(x);
  r.lhs = as_double(max_count(lc)) / xd;
  r.rhs = std::pow(loglog_ed(P), -opt.c2);
  r.param("x", static_cast<i64>(x)).param("P", static_cast<i64>(P)).param("delta", delta);
  const bool qualifies = std::log(xd) > delta * std::log(as_double(q));
  r.param("qualifies", qualifies);
  if (!qualifies) r.note = "x below q^delta";
  r.finish();
  return r;
}

BoundRow thm4_row(const DirichletCharacter& chi, const Thm4Options& opt) {
  const u64 q = chi.modulus(), d = chi.order();
  if (q > opt.q_cap) throw std::invalid_argument("thm4: modulus above the configured cap");
  BoundRow r = row_for("thm4", chi);
  const MaxTable mt = max_all_powers(chi);
  const double scale = std::sqrt(as_double(q)) * std::log(as_double(q));
  const double alt1 = mt.entries[1 % d].value / scale;
  CompensatedSum s;
  for (u64 l = 1; l < d; ++l) s.add(mt.entries[l].value);
  const double alt2 = s.value() / as_double(d) / scale;
  r.lhs = std::min(alt1, alt2);
  r.rhs = std::pow(loglog_ed(d), -1.0 / 8.0);
  r.param("alt_i", alt1).param("alt_ii", alt2);
  r.finish();
  return r;
}

BoundRow tk_row(const DirichletCharacter& chi, const TkOptions& opt) {
  BoundRow r = row_for("tk", chi);
  const u64 N = opt.N;
  const auto f = as_multiplicative(chi, N);
  const SigmaProfile sp = sigma_profile(f, static_cast<double>(N));
  r.param("N", static_cast<i64>(N)).param("j0", static_cast<i64>(sp.j_max));
  if (chi.order() < 2) {
    r.note = "principal";
    return r;
  }
  const OmegaFunction om(sp.j_max, f);
  const OmegaMoments mc = omega_moments(om, N, Weighting::Cesaro);
  const OmegaMoments ml = omega_moments(om, N, Weighting::Logarithmic);
  r.lhs = mc.second;
  r.rhs = mc.sigma;
  r.param("mean", mc.mean).param("ratio_log", ml.ratio).param("c1", ml.c1).param("c2", ml.c2);
  r.finish();
  return r;
}

std::vector<BoundRow> thm1_report(const std::vector<DirichletCharacter>& fam, const Thm1Options& opt) {
  return rows_parallel(fam.size(), [&](std::size_t i) { return thm1_row(fam[i], opt); });
}

std::vector<BoundRow> thm2_report(const std::vector<DirichletCharacter>& fam, const Thm2Options& opt) {
  return rows_parallel(fam.size(), [&](std::size_t i) { return thm2_row(fam[i], opt); });
}

std::vector<BoundRow> pplus_report(const std::vector<DirichletCharacter>& fam, const Thm2Options& opt) {
  return rows_parallel(fam.size(), [&](std::size_t i) { return pplus_row(fam[i], opt); });
}

std::vector<BoundRow> thm4_report(const std::vector<DirichletCharacter>& fam, const Thm4Options& opt) {
  std::vector<const DirichletCharacter*> keep;
  for (const auto& c : fam)
    if (c.modulus() <= opt.q_cap) keep.push_back(&c);
  return rows_parallel(keep.size(), [&](std::size_t i) { return thm4_row(*keep[i], opt); });
}

std::vector<BoundRow> tk_report(const std::vector<DirichletCharacter>& fam, const TkOptions& opt) {
  return rows_parallel(fam.size(), [&](std::size_t i) { return tk_row(fam[i], opt); });
}

}  // namespace charsum
