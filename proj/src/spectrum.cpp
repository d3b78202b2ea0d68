#include "charsum/spectrum.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "charsum/pretentious.hpp"

namespace charsum {

const char* to_string(SpectrumKind kind) {
  return kind == SpectrumKind::Cesaro ? "cesaro" : "maximal";
}

Bitset SpectrumSet::nonzero() const {
  Bitset b = members;
  if (b.size()) b.reset(0);
  return b;
}

std::vector<u64> SpectrumSet::list() const {
  std::vector<u64> out;
  for (auto i = members.find_first(); i != Bitset::npos; i = members.find_next(i)) out.push_back(i);
  return out;
}

SpectrumSet spectrum_cesaro(const SumsTable& sums, double eps) {
  SpectrumSet s{sums.d, SpectrumKind::Cesaro, eps, eps * static_cast<double>(sums.x),
                Bitset(sums.d)};
  for (u64 l = 0; l < sums.d; ++l)
    if (std::abs(sums.values[l]) >= s.threshold) s.members.set(l);
  // |S_l| = |S_{d-l}| exactly; keep the set symmetric under rounding
  for (u64 l = 1; l < sums.d; ++l)
    if (s.members.test(l)) s.members.set(sums.d - l);
  return s;
}

SpectrumSet spectrum_maximal(const MaxTable& table, u64 q, double eps) {
  const double qd = static_cast<double>(q);
  SpectrumSet s{table.d, SpectrumKind::Maximal, eps, eps * std::sqrt(qd) * std::log(qd),
                Bitset(table.d)};
  for (u64 l = 0; l < table.d; ++l)
    if (table.entries[l].value >= s.threshold) s.members.set(l);
  return s;
}

namespace {

Bitset rotate(const Bitset& b, u64 a) {
  const u64 d = b.size();
  a %= d;
  if (a == 0) return b;
  return (b << a) | (b >> (d - a));
}

}  // namespace

Bitset sumset(const Bitset& a, const Bitset& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sumset: sizes differ");
  Bitset out(a.size());
  for (auto i = a.find_first(); i != Bitset::npos; i = a.find_next(i)) out |= rotate(b, i);
  return out;
}

Bitset iterated_sumset(const Bitset& s, u64 m) {
  if (m == 0) throw std::invalid_argument("iterated_sumset: m must be >= 1");
  if (s.none()) throw std::invalid_argument("iterated_sumset: empty set");
  Bitset out = s;
  for (u64 i = 1; i < m; ++i) out = sumset(out, s);
  return out;
}

Bitset multiples_of(u64 g, u64 d) {
  Bitset b(d);
  for (u64 v = 0; v < d; v += g) b.set(v);
  return b;
}

StabilizationReport stabilize(const Bitset& s) {
  const u64 d = s.size();
  if (d == 0 || !s.test(0)) throw std::invalid_argument("stabilize: 0 must belong to S");
  for (u64 l = 1; l < d; ++l)
    if (s.test(l) != s.test(d - l)) throw std::invalid_argument("stabilize: S is not symmetric");
  StabilizationReport r;
  Bitset cur = s;
  for (u64 m = 1; m <= d; ++m) {
    Bitset next = sumset(cur, s);
    if (next == cur) {
      r.m = m;
      r.stabilized = true;
      break;
    }
    cur = std::move(next);
  }
  r.H = cur;
  r.contains_S = s.is_subset_of(cur);
  const u64 size = cur.count();
  if (r.stabilized && d % size == 0) {
    r.g = d / size;
    r.is_subgroup = (cur == multiples_of(r.g, d)) && sumset(cur, cur) == cur;
  }
  return r;
}

u64 discrepancy_count(u64 j0, u64 r, double theta) {
  if (r == 0) return 0;
  const u64 R = r / std::gcd(j0, r);
  // J0 is a unit mod R, so J0 l mod R visits every class r/R times
  const double scaled = theta * static_cast<double>(R);
  const u64 kmax = scaled < 0 ? 0 : static_cast<u64>(std::floor(scaled * (1 + 1e-12) + 1e-12));
  const u64 per_block = 2 * kmax >= R ? R : 2 * kmax + 1;
  return (r / R) * per_block;
}

namespace {

void stabilization_fields(StructureReport& rep, const SpectrumSet& spec) {
  const auto st = stabilize(spec.members);
  rep.m = st.m;
  rep.g = st.g;
  rep.H_size = st.H.count();
  const double eps = rep.epsilon;
  rep.m_within = static_cast<double>(st.m) <= 1.0 / (eps * eps) + 1e-9;
  rep.g_within = st.g > 0 && static_cast<double>(st.g) <= 1.0 / eps + 1e-9;
  rep.subgroup_ok = st.is_subgroup;
  rep.subset_ok = st.g > 0 && spec.members.is_subset_of(multiples_of(st.g, spec.d));
}

}  // namespace

StructureReport structure_check(const DirichletCharacter& chi, u64 x, double eps,
                                SpectrumKind kind, const StructureOptions& opts) {
  StructureReport rep;
  rep.q = chi.modulus();
  rep.index = chi.index();
  rep.d = chi.order();
  rep.kind = kind;
  rep.epsilon = eps;
  const u64 q = chi.modulus();
  const u64 d = chi.order();
  SpectrumSet spec;
  if (kind == SpectrumKind::Cesaro) {
    rep.x = x;
    spec = spectrum_cesaro(sums_all_powers(level_counts(chi, x)), eps);
  } else {
    rep.x = q;
    const double thr = eps * std::sqrt(double(q)) * std::log(double(q));
    spec = spectrum_maximal(max_all_powers(chi, thr), q, eps);
  }
  rep.members_count = spec.members.count();
  rep.hypothesis_met = static_cast<double>(rep.members_count) >= eps * static_cast<double>(d);
  if (!rep.hypothesis_met) {
    rep.note = "hypothesis not met";
    rep.pass = true;
    return rep;
  }
  if (!spec.members.test(0)) {
    // the principal power is below threshold only for eps above the coprime density
    rep.note = "0 not in spectrum";
    rep.pass = true;
    return rep;
  }
  stabilization_fields(rep, spec);
  rep.pass = rep.subset_ok && rep.subgroup_ok;

  const u64 r = d / rep.g;
  const double log_inv_eps = std::log(1.0 / eps);
  const auto chig = chi.power(static_cast<i64>(rep.g));
  if (kind == SpectrumKind::Cesaro) {
    const double y = static_cast<double>(x);
    rep.bound_lhs = max_power_distance_sq(as_multiplicative(chig, x), y, r);
    rep.bound_rhs = 200.0 * double(rep.m) * double(rep.m) * log_inv_eps;
  } else {
    // xi = 1 (conductor 1) first, then primitive xi mod k of order dividing r
    double best = max_power_distance_sq(as_multiplicative(chig, q), double(q), r);
    rep.xi_conductor = 1;
    rep.xi_index = 0;
    for (u64 k = 3; k <= opts.xi_conductor_max; ++k) {
      for (const auto& xi : enumerate_characters(build_group(k), 0, true)) {
        if (r % xi.order() != 0) continue;
        const double v = max_power_distance_sq(product_with_conjugate(chig, xi, q), double(q), r);
        if (v < best) {
          best = v;
          rep.xi_conductor = k;
          rep.xi_index = xi.index();
        }
      }
    }
    rep.bound_lhs = best;
    rep.bound_rhs = double(rep.m) * double(rep.m) * log_inv_eps;
  }
  rep.ratio = rep.bound_rhs > 0 ? rep.bound_lhs / rep.bound_rhs : 0.0;
  return rep;
}

}  // namespace charsum
