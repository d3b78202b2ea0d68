#include "charsum/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>

#include "charsum/numeric.hpp"

namespace charsum::kernels {

namespace {

void box_range(std::span<const u64> orders, std::span<const u64> weights, u64 d, u64 begin,
               u64 end, u64* counts) {
  const std::size_t rank = orders.size();
  if (rank == 0) {
    if (begin < end) counts[0] += end - begin;
    return;
  }
  std::vector<u64> s(rank);
  u64 rest = begin;
  for (std::size_t i = rank; i-- > 0;) {
    s[i] = rest % orders[i];
    rest /= orders[i];
  }
  const std::size_t last = rank - 1;
  const u64 o = orders[last];
  const u64 w = weights[last] % d;
  u64 idx = begin;
  while (idx < end) {
    u64 v = 0;
    for (std::size_t i = 0; i < rank; ++i) v = (v + weights[i] % d * s[i]) % d;
    const u64 run = std::min(o - s[last], end - idx);
    for (u64 k = 0; k < run; ++k) {
      ++counts[v];
      v += w;
      if (v >= d) v -= d;
    }
    idx += run;
    s[last] += run;
    for (std::size_t i = rank; i-- > 0;) {
      if (s[i] < orders[i]) break;
      s[i] = 0;
      if (i > 0) ++s[i - 1];
    }
  }
}

u64 box_size(std::span<const u64> orders) {
  u64 n = 1;
  for (u64 o : orders) n *= o;
  return n;
}

void residue_range(const CharacterGroup& group, std::span<const u64> weights, u64 d, u64 lo,
                   u64 hi, u64* counts) {
  const u64 q = group.modulus();
  const std::size_t rank = group.rank();
  const auto logs = group.residue_logs();
  if (logs.empty()) {
    std::vector<u64> s(rank);
    for (u64 n = lo; n < hi; ++n) {
      if (!group.logs(n, s)) continue;
      u64 a = 0;
      for (std::size_t i = 0; i < rank; ++i) a = (a + mulmod(weights[i], s[i], d)) % d;
      ++counts[a];
    }
    return;
  }
  u64 r = lo % q;
  for (u64 n = lo; n < hi; ++n) {
    const std::uint32_t* row = logs.data() + r * rank;
    if (row[0] != kZero32) {
      u64 a = 0;
      for (std::size_t i = 0; i < rank; ++i) a += weights[i] * row[i];
      ++counts[a % d];
    }
    if (++r == q) r = 0;
  }
}

template <class Body>
void split_merge(u64 lo, u64 hi, u64 d, std::span<u64> counts, Body body) {
  const u64 len = hi > lo ? hi - lo : 0;
  const int threads = len < (1u << 14) ? 1 : omp_get_max_threads();
  if (threads <= 1) {
    body(lo, hi, counts.data());
    return;
  }
  std::vector<std::vector<u64>> local(threads, std::vector<u64>(d, 0));
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int t = 0; t < threads; ++t) {
    const u64 b = lo + len * t / threads;
    const u64 e = lo + len * (t + 1) / threads;
    body(b, e, local[t].data());
  }
  for (int t = 0; t < threads; ++t)
    for (u64 j = 0; j < d; ++j) counts[j] += local[t][j];
}

void prefix_one(std::span<const Step> steps, u64 d, u64 l, double stop_at,
                const std::vector<std::complex<double>>& roots,
                std::vector<std::complex<double>>& scratch, PrefixMax& out) {
  scratch.resize(d);
  for (u64 a = 0; a < d; ++a) scratch[a] = roots[mulmod(a, l, d)];
  const double stop2 = stop_at > 0 ? stop_at * stop_at : -1.0;
  double re = 0.0, im = 0.0;
  double best = -1.0;
  u64 arg = 0;
  out.complete = true;
  for (const Step& st : steps) {
    const std::complex<double> z = scratch[st.a];
    re += z.real();
    im += z.imag();
    const double nrm = re * re + im * im;
    if (nrm > best + 1e-9) {
      best = nrm;
      arg = st.n;
      if (stop2 > 0 && nrm >= stop2) {
        out.complete = false;
        break;
      }
    }
  }
  out.value = best < 0 ? 0.0 : std::sqrt(best);
  out.argmax = arg;
}

}  // namespace

void box_counts_serial(std::span<const u64> orders, std::span<const u64> weights, u64 d,
                       std::span<u64> counts) {
  box_range(orders, weights, d, 0, box_size(orders), counts.data());
}

void box_counts_parallel(std::span<const u64> orders, std::span<const u64> weights, u64 d,
                         std::span<u64> counts) {
  split_merge(0, box_size(orders), d, counts, [&](u64 b, u64 e, u64* c) {
    box_range(orders, weights, d, b, e, c);
  });
}

void residue_counts_serial(const CharacterGroup& group, std::span<const u64> weights, u64 d,
                           u64 lo, u64 hi, std::span<u64> counts) {
  residue_range(group, weights, d, lo, hi, counts.data());
}

void residue_counts_parallel(const CharacterGroup& group, std::span<const u64> weights, u64 d,
                             u64 lo, u64 hi, std::span<u64> counts) {
  split_merge(lo, hi, d, counts, [&](u64 b, u64 e, u64* c) {
    residue_range(group, weights, d, b, e, c);
  });
}

void prefix_max_serial(std::span<const Step> steps, u64 d, std::span<const u64> ells,
                       double stop_at, std::span<PrefixMax> out) {
  const auto roots = roots_of_unity(d);
  std::vector<std::complex<double>> scratch;
  for (std::size_t i = 0; i < ells.size(); ++i)
    prefix_one(steps, d, ells[i], stop_at, roots, scratch, out[i]);
}

void prefix_max_parallel(std::span<const Step> steps, u64 d, std::span<const u64> ells,
                         double stop_at, std::span<PrefixMax> out) {
  const auto roots = roots_of_unity(d);
  const long long n = static_cast<long long>(ells.size());
#pragma omp parallel if (n > 1)
  {
    std::vector<std::complex<double>> scratch;
#pragma omp for schedule(dynamic)
    for (long long i = 0; i < n; ++i) prefix_one(steps, d, ells[i], stop_at, roots, scratch, out[i]);
  }
}

std::vector<u64> reference_level_counts(const DirichletCharacter& chi, u64 x) {
  std::vector<u64> counts(chi.order() + 1, 0);
  for (u64 n = 1; n <= x; ++n) {
    const CharValue v = chi(n);
    ++counts[v.is_zero() ? chi.order() : v.exponent];
  }
  return counts;
}

std::complex<double> reference_sum(const DirichletCharacter& chi, i64 l, u64 x) {
  const DirichletCharacter psi = chi.power(l);
  CompensatedComplex s;
  for (u64 n = 1; n <= x; ++n) s.add(psi(n).complex());
  return s.value();
}

PrefixMax reference_prefix_max(const DirichletCharacter& chi, i64 l) {
  const DirichletCharacter psi = chi.power(l);
  std::complex<double> s = 0;
  PrefixMax best{-1.0, 0, true};
  for (u64 t = 1; t <= chi.modulus(); ++t) {
    s += psi(t).complex();
    if (std::abs(s) > best.value + 1e-9) {
      best.value = std::abs(s);
      best.argmax = t;
    }
  }
  return best;
}

}  // namespace charsum::kernels
