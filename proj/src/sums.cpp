#include "charsum/sums.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "charsum/kernels.hpp"
#include "charsum/numeric.hpp"

namespace charsum {

u64 LevelCounts::coprime() const { return std::accumulate(counts.begin(), counts.end(), u64{0}); }

u64 cutoff(u64 q, long double delta) {
  const long double v = std::pow(static_cast<long double>(q), delta);
  // guard against q^delta landing a hair below an integer
  const long double r = std::nearbyint(v);
  if (std::fabs(v - r) <= 1e-12L * std::max(1.0L, r)) return static_cast<u64>(r);
  return static_cast<u64>(std::floor(v));
}

LevelCounts level_counts(const DirichletCharacter& chi, u64 x) {
  if (x > kDeskLimit) throw std::invalid_argument("level_counts: x beyond the desk limit");
  const CharacterGroup& g = *chi.group();
  const u64 q = g.modulus();
  const u64 d = chi.order();
  LevelCounts lc;
  lc.d = d;
  lc.x = x;
  lc.counts.assign(d, 0);
  const u64 periods = x / q;
  if (periods > 0) {
    std::vector<u64> orders;
    for (const auto& c : g.components()) orders.push_back(c.order);
    kernels::box_counts_parallel(orders, chi.weights(), d, lc.counts);
    if (periods > 1)
      for (auto& c : lc.counts) c *= periods;
  }
  kernels::residue_counts_parallel(g, chi.weights(), d, 1, x % q + 1, lc.counts);
  lc.noncoprime = x - lc.coprime();
  return lc;
}

LevelCounts level_counts(const UnimodularMultiplicative& f, u64 x) {
  const auto table = f.table(x);
  LevelCounts lc;
  lc.d = f.order();
  lc.x = x;
  lc.counts.assign(lc.d, 0);
  for (u64 n = 1; n <= x; ++n)
    if (table[n] != kZero32) ++lc.counts[table[n]];
  lc.noncoprime = x - lc.coprime();
  return lc;
}

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

u64 min_count(const LevelCounts& lc) { return *std::min_element(lc.counts.begin(), lc.counts.end()); }

}  // namespace

SumsTable sums_all_powers_direct(const LevelCounts& lc) {
  const u64 d = lc.d;
  SumsTable t{d, lc.x, std::vector<std::complex<double>>(d)};
  const u64 base = min_count(lc);
  const auto roots = roots_of_unity(d);
  for (u64 l = 0; l < d; ++l) {
    if (l == 0) {
      t.values[0] = static_cast<double>(lc.coprime());
      continue;
    }
    CompensatedComplex s;
    u64 idx = 0;
    for (u64 j = 0; j < d; ++j) {
      const u64 c = lc.counts[j] - base;
      if (c) s.add(static_cast<double>(c) * roots[idx]);
      idx += l;
      if (idx >= d) idx -= d;
    }
    t.values[l] = s.value();
  }
  return t;
}

SumsTable sums_all_powers_fft(const LevelCounts& lc) {
  const u64 d = lc.d;
  SumsTable t{d, lc.x, std::vector<std::complex<double>>(d)};
  const u64 base = min_count(lc);
  const u64 half = d / 2 + 1;
  double* in = fftw_alloc_real(d);
  fftw_complex* out = fftw_alloc_complex(half);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(d), in, out, FFTW_ESTIMATE);
  }
  for (u64 j = 0; j < d; ++j) in[j] = static_cast<double>(lc.counts[j] - base);
  fftw_execute(plan);
  // r2c uses e(-jl/d); the sums need e(+jl/d), i.e. the conjugate.
  for (u64 l = 0; l < half; ++l) {
    t.values[l] = {out[l][0], -out[l][1]};
    if (l > 0 && l < d) t.values[d - l] = {out[l][0], out[l][1]};
  }
  t.values[0] = static_cast<double>(lc.coprime());
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return t;
}

SumsTable sums_all_powers(const LevelCounts& lc) {
  return lc.d <= kDirectTransformLimit ? sums_all_powers_direct(lc) : sums_all_powers_fft(lc);
}

namespace {

std::vector<kernels::Step> half_period_steps(const DirichletCharacter& chi) {
  const u64 q = chi.modulus();
  const auto vals = chi.value_table();
  std::vector<kernels::Step> steps;
  const u64 h = (q - 1) / 2;
  steps.reserve(h);
  for (u64 n = 1; n <= h; ++n)
    if (vals[n] != kZero32)
      steps.push_back({static_cast<std::uint32_t>(n), vals[n]});
  return steps;
}

MaxEntry principal_entry(u64 q) { return {static_cast<double>(totient(q)), q - 1, true}; }

}  // namespace

MaxEntry maximal_sum(const DirichletCharacter& chi) {
  if (chi.principal()) return principal_entry(chi.modulus());
  // |S(q-1-t)| = |S(t)| for non-principal chi, so t <= (q-1)/2 suffices.
  const auto steps = half_period_steps(chi);
  const u64 ell = 1;
  kernels::PrefixMax pm;
  kernels::prefix_max_serial(steps, chi.order(), std::span<const u64>(&ell, 1), 0.0,
                             std::span<kernels::PrefixMax>(&pm, 1));
  return {pm.value, pm.argmax, pm.complete};
}

MaxTable max_all_powers(const DirichletCharacter& chi, std::optional<double> threshold) {
  const u64 d = chi.order();
  MaxTable table{d, std::vector<MaxEntry>(d)};
  table.entries[0] = principal_entry(chi.modulus());
  if (d == 1) return table;
  const auto steps = half_period_steps(chi);
  std::vector<u64> ells;
  for (u64 l = 1; 2 * l <= d; ++l) ells.push_back(l);
  std::vector<kernels::PrefixMax> out(ells.size());
  kernels::prefix_max_parallel(steps, d, ells, threshold.value_or(0.0), out);
  for (std::size_t i = 0; i < ells.size(); ++i) {
    const MaxEntry e{out[i].value, out[i].argmax, out[i].complete};
    table.entries[ells[i]] = e;
    table.entries[d - ells[i]] = e;
  }
  return table;
}

namespace {

LogSumSeries log_series(const std::vector<std::uint32_t>& exps, u64 period, u64 D, i64 l,
                        std::vector<u64> cutoffs) {
  std::sort(cutoffs.begin(), cutoffs.end());
  cutoffs.erase(std::unique(cutoffs.begin(), cutoffs.end()), cutoffs.end());
  LogSumSeries out;
  out.cutoffs = cutoffs;
  const auto roots = roots_of_unity(D);
  const u64 lr = static_cast<u64>(((l % static_cast<i64>(D)) + static_cast<i64>(D)) % static_cast<i64>(D));
  CompensatedComplex s;
  u64 n = 1;
  double best = -1.0;
  for (u64 N : cutoffs) {
    for (; n <= N; ++n) {
      const std::uint32_t a = exps[period ? n % period : n];
      if (a == kZero32) continue;
      s.add(roots[mulmod(a, lr, D)] / static_cast<double>(n));
    }
    const auto v = s.value();
    out.values.push_back(v);
    if (std::abs(v) > best) {
      best = std::abs(v);
      out.argmax = N;
    }
  }
  out.max_abs = std::max(best, 0.0);
  return out;
}

}  // namespace

LogSumSeries log_sums(const UnimodularMultiplicative& f, std::vector<u64> cutoffs) {
  const u64 top = cutoffs.empty() ? 0 : *std::max_element(cutoffs.begin(), cutoffs.end());
  return log_series(f.table(top), 0, f.order(), 1, std::move(cutoffs));
}

LogSumSeries log_sums(const DirichletCharacter& chi, i64 l, std::vector<u64> cutoffs) {
  return log_series(chi.value_table(), chi.modulus(), chi.order(), l, std::move(cutoffs));
}

LevelMax level_set_max(const LevelCounts& lc) {
  LevelMax m;
  for (u64 j = 0; j < lc.d; ++j)
    if (lc.counts[j] > m.count || j == 0) m = {lc.counts[j], j};
  return m;
}

double mean_square_over_powers(const SumsTable& sums) {
  CompensatedSum s;
  for (const auto& v : sums.values) s.add(std::norm(v));
  return s.value() / static_cast<double>(sums.d);
}

u64 sum_of_squared_counts(const LevelCounts& lc) {
  u64 s = 0;
  for (u64 c : lc.counts) s += c * c;
  return s;
}

}  // namespace charsum
