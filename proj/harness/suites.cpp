#include "suites.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <map>

#include "charsum/identities.hpp"
#include "charsum/spectrum.hpp"

namespace charsum::harness {

const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> list{
      {"orthogonality", true, "full-period level counts all equal phi(q)/d (orthogonality of characters)"},
      {"pair-count", true, "mean of |S_{chi^l}(x)|^2 over l equals the count of pairs with chi(n) = chi(m)"},
      {"passto-pow", true, "M_{d,chi}(x) <= M_{r,chi^{d/r}}(x) for r | d (passing to a power)"},
      {"et-level", true, "Erdos-Turan bound on level-set sizes with constants 1, 1, 2/3"},
      {"ft-correlation", true, "correlations of the mean-zero functions f_t on T_{k,z}"},
      {"variance-delta", true, "variance term Delta: defining sum against the GCD-stratified form"},
      {"fourier", true, "Fourier expansion of ||t||^2 and its truncation error"},
      {"hmt", false, "Halasz-Montgomery-Tenenbaum mean value bound (report only)"},
      {"gslog", false, "logarithmic mean value bound in terms of D(f, 1; x) (report only)"},
      {"tk", false, "Turan-Kubilius variance of the level-set counting function (report only)"},
      {"structure", true, "large spectrum sits in gZ/dZ and its sumsets stabilize on a subgroup"},
      {"thm1", false, "main short-sum theorem: min(|S_chi(x)|/x, power mean) against (log log ed)^{-(1/6 - tau)}"},
      {"thm2", true, "level-set theorem: M_{d,chi}(x)/x against inf_z 1/z + (log log ed_z)^{-c2}; corollary via P+(d); orders 2^k at x = q"},
      {"thm4", false, "maximal-sum theorem: min(M(chi), mean of M(chi^l)) / (sqrt(q) log q) against (log log ed)^{-1/8}"},
  };
  return list;
}

const SuiteInfo* find_suite(const std::string& name) {
  for (const auto& s : suites())
    if (s.name == name) return &s;
  return nullptr;
}

namespace {

using Rows = std::vector<BoundRow>;
using Family = std::vector<DirichletCharacter>;

// fn(i) returns several rows; rows are concatenated in index order.
template <class Fn>
Rows flat_parallel(std::size_t n, Fn fn) {
  std::vector<Rows> parts(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      parts[i] = fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  Rows out;
  for (auto& p : parts)
    for (auto& r : p) out.push_back(std::move(r));
  return out;
}

std::vector<u64> x_values(const ExperimentConfig& c, u64 q, std::vector<u64> fallback) {
  if (c.x) return {c.x};
  if (c.delta) return {std::max<u64>(1, cutoff(q, *c.delta))};
  return fallback;
}

Family family(const ExperimentConfig& c, u64 d_min) {
  Family f = generate_family(c.family(d_min));
  if (f.empty()) throw ConfigError("the family is empty");
  return f;
}

struct Context {
  const ExperimentConfig& cfg;
  Family chars;
};

Rows orthogonality(Context& ctx) {
  ctx.chars = family(ctx.cfg, 1);
  return rows_parallel(ctx.chars.size(), [&](std::size_t i) { return orthogonality_check(ctx.chars[i]); });
}

Rows pair_count(Context& ctx) {
  const auto& c = ctx.cfg;
  boost::random::mt19937_64 rng(c.seed);
  const auto mods = family_moduli(c.family(1));
  if (mods.empty()) throw ConfigError("no moduli in range");
  const u64 n = c.n.value_or(100);
  struct Instance {
    u64 q, index, x;
  };
  std::vector<Instance> inst;
  for (u64 i = 0; i < n; ++i) {
    const u64 q = mods[boost::random::uniform_int_distribution<std::size_t>(0, mods.size() - 1)(rng)];
    const u64 phi = totient(q);
    const u64 idx = boost::random::uniform_int_distribution<u64>(0, phi - 1)(rng);
    const u64 x = c.x ? c.x : boost::random::uniform_int_distribution<u64>(1, q)(rng);
    inst.push_back({q, idx, x});
  }
  Rows rows = rows_parallel(inst.size(), [&](std::size_t i) {
    return pair_count_identity(character_from_index(build_group(inst[i].q), inst[i].index), inst[i].x);
  });
  std::map<std::pair<u64, u64>, bool> seen;
  for (const auto& in : inst) seen[{in.q, in.index}] = true;
  for (const auto& [key, _] : seen) ctx.chars.push_back(character_from_index(build_group(key.first), key.second));
  return rows;
}

Rows passto_pow(Context& ctx) {
  ctx.chars = family(ctx.cfg, 1);
  return flat_parallel(ctx.chars.size(), [&](std::size_t i) {
    const auto& chi = ctx.chars[i];
    const u64 q = chi.modulus();
    Rows out;
    for (u64 x : x_values(ctx.cfg, q, {q / 2, q})) out.push_back(passto_pow_check(chi, x));
    return out;
  });
}

Rows et_level(Context& ctx) {
  ctx.chars = family(ctx.cfg, 1);
  return flat_parallel(ctx.chars.size(), [&](std::size_t i) {
    const auto& chi = ctx.chars[i];
    const u64 q = chi.modulus();
    Rows out;
    for (u64 x : x_values(ctx.cfg, q, {std::max<u64>(1, cutoff(q, 0.6L)), q}))
      for (auto& r : et_level_check(chi, x, ctx.cfg.Ks)) out.push_back(std::move(r));
    return out;
  });
}

Rows ft_correlation_suite(Context& ctx) {
  const auto& c = ctx.cfg;
  Family fam = family(c, 2);
  const u64 n = std::min<u64>(c.n.value_or(5), fam.size());
  fam.erase(fam.begin() + static_cast<std::ptrdiff_t>(n), fam.end());
  ctx.chars = fam;
  const std::vector<u64> xs = c.x ? std::vector<u64>{c.x} : std::vector<u64>{1000, 100000};
  Rows rows;
  for (const auto& chi : fam)
    for (u64 j0 = 0; j0 < chi.order(); ++j0)
      for (u64 k = 1; k <= c.k; ++k) {
        const TkzSet set = enumerate_tkz(chi, j0, k, c.z);
        if (set.members.empty()) continue;
        for (u64 x : xs) {
          const CorrelationSweep sw = ft_correlation_sweep(set, x);
          BoundRow r = row_for("ft-correlation", chi);
          r.param("j0", static_cast<i64>(j0)).param("k", static_cast<i64>(k));
          r.param("z", static_cast<i64>(c.z)).param("x", static_cast<i64>(x));
          r.param("members", static_cast<i64>(set.members.size()));
          r.param("pairs", static_cast<i64>(sw.pairs)).param("violations", static_cast<i64>(sw.violations));
          r.lhs = sw.max_ratio;
          r.rhs = 1.0;
          r.pass = sw.violations == 0;
          r.finish();
          rows.push_back(std::move(r));
        }
      }
  return rows;
}

BoundRow delta_row(const std::vector<double>& sigma, u64 r, u64 M) {
  const DeltaResult a = variance_delta(sigma, r, DeltaMethod::Direct);
  const DeltaResult b = variance_delta(sigma, r, DeltaMethod::Stratified, M);
  BoundRow row;
  row.suite = "variance-delta";
  row.d = sigma.size();
  const double S2 = b.sigma_total * b.sigma_total;
  row.param("r", static_cast<i64>(r)).param("M", static_cast<i64>(M));
  row.param("sigma_total", b.sigma_total).param("direct", a.value).param("stratified", b.value);
  row.param("budget", b.budget);
  row.lhs = std::abs(a.value - b.value);
  row.rhs = 1e-6 * std::max(1.0, S2) + b.budget;
  row.pass = row.lhs <= row.rhs;
  row.finish();
  return row;
}

Rows variance(Context& ctx) {
  const auto& c = ctx.cfg;
  Rows rows;
  {
    const std::vector<double> sigma{0.0, 1.0};
    const DeltaResult a = variance_delta(sigma, 2, DeltaMethod::Direct);
    BoundRow r;
    r.suite = "variance-delta";
    r.d = 2;
    r.param("r", i64{2}).param("direct", a.value).param("expected", 5.0 / 288.0);
    r.lhs = std::abs(a.value - 5.0 / 288.0);
    r.rhs = 1e-15;
    r.pass = r.lhs <= r.rhs;
    r.note = "closed form";
    r.finish();
    rows.push_back(std::move(r));
  }
  boost::random::mt19937_64 rng(c.seed);
  const u64 dmax = c.d_max ? c.d_max : 60;
  const u64 dmin = std::max<u64>(2, c.d_min.value_or(2));
  if (dmin > dmax) throw ConfigError("empty order range");
  const u64 n = c.n.value_or(200);
  std::vector<std::pair<std::vector<double>, u64>> inst;
  boost::random::uniform_real_distribution<double> unit(0.0, 1.0);
  for (u64 i = 0; i < n; ++i) {
    const u64 d = boost::random::uniform_int_distribution<u64>(dmin, dmax)(rng);
    const auto divs = divisors(d);
    const u64 r = divs[boost::random::uniform_int_distribution<std::size_t>(0, divs.size() - 1)(rng)];
    std::vector<double> sigma(d, 0.0);
    for (u64 j = 1; j < d; ++j) sigma[j] = unit(rng);
    inst.emplace_back(std::move(sigma), r);
  }
  Rows more = rows_parallel(inst.size(), [&](std::size_t i) { return delta_row(inst[i].first, inst[i].second, c.M); });
  for (auto& r : more) rows.push_back(std::move(r));
  return rows;
}

Rows fourier(Context& ctx) {
  const auto& c = ctx.cfg;
  Rows rows;
  double worst = 0.0, worst_t = 0.0;
  for (u64 i = 0; i < c.grid; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(c.grid);
    const double e = std::abs(fourier_normsq(t, c.V).value - normsq(t));
    if (e > worst) {
      worst = e;
      worst_t = t;
    }
  }
  BoundRow g;
  g.suite = "fourier";
  g.param("V", static_cast<i64>(c.V)).param("t", worst_t).param("grid", static_cast<i64>(c.grid));
  g.lhs = worst;
  g.rhs = 1e-4;
  g.pass = worst <= g.rhs;
  g.note = "grid";
  g.finish();
  rows.push_back(std::move(g));
  for (double t : {0.0, 0.5}) {
    const FourierValue fv = fourier_normsq(t, c.V);
    BoundRow r;
    r.suite = "fourier";
    r.param("V", static_cast<i64>(c.V)).param("t", t).param("grid", i64{1});
    r.lhs = std::abs(fv.value - normsq(t));
    r.rhs = fv.tail_bound;
    r.pass = r.lhs <= r.rhs * (1 + 1e-9);
    r.note = "tail bound";
    r.finish();
    rows.push_back(std::move(r));
  }
  return rows;
}

Rows hmt(Context& ctx) {
  ctx.chars = family(ctx.cfg, 2);
  return rows_parallel(ctx.chars.size(), [&](std::size_t i) {
    const auto& chi = ctx.chars[i];
    return hmt_check(chi, x_values(ctx.cfg, chi.modulus(), {10000})[0], ctx.cfg.T);
  });
}

Rows gslog(Context& ctx) {
  ctx.chars = family(ctx.cfg, 2);
  return rows_parallel(ctx.chars.size(), [&](std::size_t i) {
    const auto& chi = ctx.chars[i];
    return gslog_check(chi, x_values(ctx.cfg, chi.modulus(), {10000})[0]);
  });
}

Rows tk(Context& ctx) {
  ctx.chars = family(ctx.cfg, 2);
  return tk_report(ctx.chars, TkOptions{ctx.cfg.N});
}

BoundRow structure_row(const DirichletCharacter& chi, u64 x, double eps, SpectrumKind kind) {
  const StructureReport s = structure_check(chi, x, eps, kind);
  BoundRow r = row_for("structure", chi);
  r.param("kind", std::string(to_string(kind))).param("epsilon", eps).param("x", static_cast<i64>(s.x));
  r.param("members_count", static_cast<i64>(s.members_count)).param("hypothesis_met", s.hypothesis_met);
  r.param("m", static_cast<i64>(s.m)).param("g", static_cast<i64>(s.g));
  r.param("H_size", static_cast<i64>(s.H_size));
  r.param("m_within", s.m_within).param("g_within", s.g_within);
  r.param("subset_ok", s.subset_ok).param("subgroup_ok", s.subgroup_ok);
  r.param("xi_conductor", static_cast<i64>(s.xi_conductor)).param("xi_index", static_cast<i64>(s.xi_index));
  r.lhs = s.bound_lhs;
  r.rhs = s.bound_rhs;
  r.pass = s.pass;
  r.note = s.note;
  r.finish();
  return r;
}

Rows structure(Context& ctx) {
  const auto& c = ctx.cfg;
  ctx.chars = family(c, 2);
  std::vector<SpectrumKind> kinds;
  if (c.kind != "maximal") kinds.push_back(SpectrumKind::Cesaro);
  if (c.kind != "cesaro") kinds.push_back(SpectrumKind::Maximal);
  return flat_parallel(ctx.chars.size(), [&](std::size_t i) {
    const auto& chi = ctx.chars[i];
    Rows out;
    for (auto kind : kinds) out.push_back(structure_row(chi, x_values(c, chi.modulus(), {chi.modulus()})[0], c.epsilon, kind));
    return out;
  });
}

Rows thm1(Context& ctx) {
  ctx.chars = family(ctx.cfg, 2);
  return thm1_report(ctx.chars, Thm1Options{ctx.cfg.tau, ctx.cfg.x_policy()});
}

Rows thm2(Context& ctx) {
  const auto& c = ctx.cfg;
  ctx.chars = family(c, 2);
  const Thm2Options opt{c.c1, c.c2, c.z_step, 0.1, c.x_policy()};
  return rows_parallel(ctx.chars.size(), [&](std::size_t i) {
    BoundRow r = thm2_row(ctx.chars[i], opt);
    const BoundRow cor = pplus_row(ctx.chars[i], opt);
    r.param("cor_P", *cor.find("P")).param("cor_rhs", cor.rhs);
    r.param("cor_qualifies", *cor.find("qualifies"));
    return r;
  });
}

Rows thm4(Context& ctx) {
  const auto& c = ctx.cfg;
  Family fam = family(c, 2);
  std::erase_if(fam, [&](const DirichletCharacter& chi) { return chi.modulus() > c.q_cap; });
  if (fam.empty()) throw ConfigError("no modulus at or below q-cap");
  ctx.chars = fam;
  return thm4_report(ctx.chars, Thm4Options{c.q_cap});
}

const std::map<std::string, std::function<Rows(Context&)>>& runners() {
  static const std::map<std::string, std::function<Rows(Context&)>> m{
      {"orthogonality", orthogonality}, {"pair-count", pair_count},
      {"passto-pow", passto_pow},       {"et-level", et_level},
      {"ft-correlation", ft_correlation_suite}, {"variance-delta", variance},
      {"fourier", fourier},             {"hmt", hmt},
      {"gslog", gslog},                 {"tk", tk},
      {"structure", structure},         {"thm1", thm1},
      {"thm2", thm2},                   {"thm4", thm4},
  };
  return m;
}

}  // namespace

Report run_suite(const ExperimentConfig& cfg) {
  const auto it = runners().find(cfg.suite);
  if (it == runners().end()) throw ConfigError("unknown suite: " + cfg.suite);
  cfg.validate();
  Context ctx{cfg, {}};
  Report rep;
  rep.suite = cfg.suite;
  rep.config = cfg.to_json();
  rep.config_hash = cfg.hash();
  rep.rows = it->second(ctx);
  for (auto& r : rep.rows) r.suite = cfg.suite;
  rep.characters = std::move(ctx.chars);
  return rep;
}

}  // namespace charsum::harness
