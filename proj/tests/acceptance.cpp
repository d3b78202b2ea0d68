#include <CLI11.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>

#include "charsum/bounds.hpp"
#include "charsum/identities.hpp"
#include "charsum/kernels.hpp"
#include "charsum/numeric.hpp"
#include "charsum/parallel.hpp"
#include "config.hpp"
#include "report.hpp"
#include "suites.hpp"

#ifndef CHARSUM_SNAPSHOT_DIR
#define CHARSUM_SNAPSHOT_DIR "tests/snapshots"
#endif

using namespace charsum;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Rng = boost::random::mt19937_64;

u64 uniform(Rng& rng, u64 lo, u64 hi) { return boost::random::uniform_int_distribution<u64>(lo, hi)(rng); }

std::string fmt(double v) { return format_double(v); }

Outcome c1() {
  u64 chars = 0, bad = 0;
  for (u64 q = 3; q <= 2000; ++q) {
    const GroupPtr g = build_group(q);
    const u64 phi = g->size();
    const auto all = enumerate_characters(g);
    u64 local_bad = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : local_bad)
    for (long long i = 0; i < static_cast<long long>(all.size()); ++i) {
      const auto& chi = all[i];
      const u64 d = chi.order();
      std::vector<u64> scan(d, 0);
      kernels::residue_counts_serial(*g, chi.weights(), d, 1, q + 1, scan);
      const LevelCounts lc = level_counts(chi, q);
      for (u64 j = 0; j < d; ++j)
        if (scan[j] * d != phi || lc.counts[j] != scan[j]) {
          ++local_bad;
          break;
        }
    }
    chars += all.size();
    bad += local_bad;
  }
  return {bad == 0, std::to_string(chars) + " characters, " + std::to_string(bad) + " with unequal counts"};
}

Outcome c2() {
  Rng rng(2);
  double worst = 0.0;
  u64 bad = 0;
  for (int i = 0; i < 100; ++i) {
    const u64 q = uniform(rng, 3, 500);
    const GroupPtr g = build_group(q);
    const auto chi = character_from_index(g, uniform(rng, 0, g->size() - 1));
    const u64 x = uniform(rng, 1, q);
    std::vector<CharValue> v(x + 1);
    for (u64 n = 1; n <= x; ++n) v[n] = chi(n);
    u64 pairs = 0;
    for (u64 n = 1; n <= x; ++n)
      for (u64 m = 1; m <= x; ++m) pairs += !v[n].is_zero() && v[n] == v[m];
    const double lhs = mean_square_over_powers(sums_all_powers(level_counts(chi, x)));
    const double rel = std::abs(lhs - double(pairs)) / std::max(1.0, double(pairs));
    worst = std::max(worst, rel);
    bad += rel > 1e-6;
  }
  return {bad == 0, "100 instances, worst relative error " + fmt(worst)};
}

Outcome c3() {
  u64 checks = 0, bad = 0;
  for (u64 q = 3; q <= 1000; ++q) {
    const auto all = enumerate_characters(build_group(q));
    u64 lc_checks = 0, lc_bad = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : lc_checks, lc_bad)
    for (long long i = 0; i < static_cast<long long>(all.size()); ++i) {
      const auto& chi = all[i];
      const u64 d = chi.order();
      for (u64 x : {q / 2, q}) {
        const u64 md = level_set_max(level_counts(chi, x)).count;
        for (u64 r : divisors(d)) {
          const u64 mr = level_set_max(level_counts(chi.power(static_cast<i64>(d / r)), x)).count;
          ++lc_checks;
          lc_bad += md > mr;
        }
      }
    }
    checks += lc_checks;
    bad += lc_bad;
  }
  return {bad == 0, std::to_string(checks) + " (chi, x, r) checks, " + std::to_string(bad) + " violations"};
}

Outcome c4() {
  const std::vector<u64> Ks{1, 5, 20, 50};
  std::vector<EtSweep> per(5001);
#pragma omp parallel for schedule(dynamic)
  for (long long q = 3; q <= 5000; ++q) {
    const std::vector<u64> xs{cutoff(static_cast<u64>(q), 0.6L), static_cast<u64>(q)};
    et_level_sweep_modulus(static_cast<u64>(q), xs, Ks, per[q]);
  }
  EtSweep all;
  for (const auto& s : per) {
    all.characters += s.characters;
    all.checks += s.checks;
    all.violations += s.violations;
    if (s.max_ratio > all.max_ratio) all = EtSweep{all.characters, all.checks, all.violations, s.max_ratio,
                                                   s.worst_q, s.worst_index, s.worst_x, s.worst_K};
  }
  return {all.violations == 0, std::to_string(all.characters) + " characters, " + std::to_string(all.checks) +
                                   " checks, " + std::to_string(all.violations) + " violations, max ratio " +
                                   fmt(all.max_ratio) + " at q=" + std::to_string(all.worst_q) +
                                   " index=" + std::to_string(all.worst_index)};
}

Outcome c5() {
  Rng rng(5);
  u64 pairs = 0, bad = 0, sets = 0;
  double worst = 0.0;
  std::string which;
  for (int i = 0; i < 5; ++i) {
    u64 q = 0;
    while (!is_prime(q)) q = uniform(rng, 3, 60);
    const GroupPtr g = build_group(q);
    const auto chi = character_from_index(g, uniform(rng, 1, g->size() - 1));
    which += (which.empty() ? "" : " ") + std::to_string(q) + ":" + std::to_string(chi.index());
    for (u64 j0 = 0; j0 < chi.order(); ++j0)
      for (u64 k = 1; k <= 3; ++k) {
        const TkzSet set = enumerate_tkz(chi, j0, k, 30);
        if (set.members.empty()) continue;
        ++sets;
        for (u64 x : {1000, 100000}) {
          const CorrelationSweep s = ft_correlation_sweep(set, x);
          pairs += s.pairs;
          bad += s.violations;
          worst = std::max(worst, s.max_ratio);
        }
      }
  }
  return {bad == 0, "characters " + which + ": " + std::to_string(sets) + " sets, " + std::to_string(pairs) +
                        " pairs, " + std::to_string(bad) + " violations, max deviation/bound " + fmt(worst)};
}

Outcome c6() {
  Rng rng(6);
  boost::random::uniform_real_distribution<double> unit(0.0, 1.0);
  u64 bad = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const u64 d = uniform(rng, 2, 60);
    const auto divs = divisors(d);
    const u64 r = divs[uniform(rng, 0, divs.size() - 1)];
    std::vector<double> sigma(d, 0.0);
    for (u64 j = 1; j < d; ++j) sigma[j] = unit(rng);
    const auto a = variance_delta(sigma, r, DeltaMethod::Direct);
    const auto b = variance_delta(sigma, r, DeltaMethod::Stratified, 1000);
    const double S2 = b.sigma_total * b.sigma_total;
    const double tol = 1e-6 * std::max(1.0, S2) + S2 / 1000.0;
    const double err = std::abs(a.value - b.value);
    worst = std::max(worst, err / tol);
    bad += err > tol;
  }
  const double e288 = std::abs(variance_delta(std::vector<double>{0.0, 1.0}, 2, DeltaMethod::Direct).value - 5.0 / 288.0);
  return {bad == 0 && e288 <= 1e-15, "200 instances, worst error/tolerance " + fmt(worst) +
                                         ", closed-form error " + fmt(e288)};
}

Outcome c7() {
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double t = i / 10000.0;
    worst = std::max(worst, std::abs(fourier_normsq(t, 10000).value - normsq(t)));
  }
  const double e0 = std::abs(fourier_normsq(0.0, 1000000).value);
  const double eh = std::abs(fourier_normsq(0.5, 1000000).value - 0.25);
  return {worst <= 1e-4 && e0 <= 1e-12 && eh <= 1e-12,
          "grid error " + fmt(worst) + " (<= 1e-4: " + (worst <= 1e-4 ? "yes" : "no") + "), t=0 error " + fmt(e0) +
              ", t=1/2 error " + fmt(eh) + " (tail sum 1/(pi^2 V) = " + fmt(1.0 / (M_PI * M_PI * 1e6)) + ")"};
}

Outcome c8() {
  Rng rng(8);
  u64 bad = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const u64 q = uniform(rng, 3, 100000);
    const GroupPtr g = build_group(q);
    const auto chi = character_from_index(g, uniform(rng, 0, g->size() - 1));
    const u64 x = uniform(rng, 1, q);
    const u64 l = uniform(rng, 0, chi.order() - 1);
    const auto fast = sums_all_powers(level_counts(chi, x)).values[l];
    const auto naive = kernels::reference_sum(chi, static_cast<i64>(l), x);
    const double rel = std::abs(fast - naive) / std::max(1.0, std::abs(naive));
    worst = std::max(worst, rel);
    bad += rel > 1e-9;
  }
  return {bad == 0, "200 instances, worst relative difference " + fmt(worst)};
}

Outcome c9() {
  u64 checked = 0, bad = 0;
  double worst = 0.0;
  for (u64 q = 3; q <= 3000; ++q) {
    const auto prim = enumerate_characters(build_group(q), 0, true);
    u64 lc = 0, lb = 0;
    double lw = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(+ : lc, lb) reduction(max : lw)
    for (long long i = 0; i < static_cast<long long>(prim.size()); ++i) {
      const auto& chi = prim[i];
      // M of the conjugate equals M of chi
      if (chi.principal() || chi.conjugate().index() < chi.index()) continue;
      const BoundRow r = pv_check(chi);
      ++lc;
      lb += !*r.pass;
      lw = std::max(lw, *r.ratio);
    }
    checked += lc;
    bad += lb;
    worst = std::max(worst, lw);
  }
  return {bad == 0, std::to_string(checked) + " characters up to conjugation, " + std::to_string(bad) +
                        " violations, max M/(sqrt(q) log q) " + fmt(worst)};
}

harness::ExperimentConfig theorem_config(const std::string& suite) {
  harness::ExperimentConfig cfg;
  CLI::App app;
  app.set_config("--config");
  harness::add_experiment_options(app, cfg);
  const std::string ini = std::string(CHARSUM_SNAPSHOT_DIR) + "/theorems.ini";
  const char* argv[] = {"acceptance", "--config", ini.c_str()};
  app.parse(3, const_cast<char**>(argv));
  cfg.suite = suite;
  return cfg;
}

Outcome c10() {
  Outcome out;
  for (const std::string suite : {"thm1", "thm2", "thm4", "tk"}) {
    const auto cfg = theorem_config(suite);
    const harness::Report rep = harness::run_suite(cfg);
    const std::string path = std::string(CHARSUM_SNAPSHOT_DIR) + "/" + suite + ".json";
    std::ifstream in(path);
    if (!in) return {false, "missing snapshot " + path};
    const auto recorded = harness::Snapshot::from_json(nlohmann::json::parse(in));
    const auto current = harness::Snapshot::of(rep, cfg.tolerance);
    const harness::Comparison cmp = harness::compare(recorded, current);
    bool finite = std::isfinite(current.summary.max_ratio);
    for (const auto& r : rep.rows)
      if (r.ratio && !std::isfinite(*r.ratio)) finite = false;
    bool ok = cmp.ok() && cmp.digest_match && finite;
    std::string note;
    if (suite == "thm1" || suite == "thm2") {
      // second in-process run, compared byte for byte
      const bool same = harness::run_suite(cfg).to_json().dump() == rep.to_json().dump();
      ok = ok && same;
      note = same ? ", rerun identical" : ", rerun DIFFERS";
    }
    if (suite == "tk") {
      const bool in_band = current.band_min >= recorded.band_min * (1 - recorded.tolerance) &&
                           current.band_max <= recorded.band_max * (1 + recorded.tolerance);
      ok = ok && in_band;
      note = ", band [" + fmt(current.band_min) + ", " + fmt(current.band_max) + "]";
    }
    out.pass = out.pass && ok;
    out.detail += (out.detail.empty() ? "" : "; ") + suite + ": " + std::to_string(rep.rows.size()) +
                  " rows, max ratio " + fmt(current.summary.max_ratio) + ", digest " +
                  (cmp.digest_match ? "matches" : "differs") + ", " + std::to_string(cmp.regressions) +
                  " regressions" + note;
    for (const auto& m : cmp.messages) out.detail += " [" + m + "]";
  }
  return out;
}

struct Criterion {
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  configure_threads();
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run one criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {"full-period equidistribution, q <= 2000", 60, c1},
      {"pair-count identity, 100 random instances", 30, c2},
      {"divisor monotonicity of level maxima, q <= 1000", 60, c3},
      {"Erdos-Turan level bound, q <= 5000", 300, c4},
      {"f_t correlation identity, k <= 3, z = 30", 120, c5},
      {"variance Delta, direct vs stratified", 30, c6},
      {"Fourier expansion of ||t||^2", 10, c7},
      {"transform vs naive sums, q <= 1e5", 60, c8},
      {"Polya-Vinogradov sanity, q <= 3000", 180, c9},
      {"theorem snapshots, primes in [1e3, 1e4], d >= 30", 600, c10},
  };
  bool ok = true;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (only && static_cast<int>(i + 1) != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= all[i].budget_s;
    const bool pass = o.pass && in_time;
    ok = ok && pass;
    std::printf("C%zu %s  %s: %s (%.1f s of %.0f s%s)\n", i + 1, pass ? "PASS" : "FAIL", all[i].title,
                o.detail.c_str(), secs, all[i].budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return ok ? 0 : 1;
}
