#pragma once

#include <boost/dynamic_bitset.hpp>

#include <optional>
#include <string>
#include <vector>

#include "charsum/characters.hpp"
#include "charsum/sums.hpp"

namespace charsum {

using Bitset = boost::dynamic_bitset<>;

enum class SpectrumKind { Cesaro, Maximal };
const char* to_string(SpectrumKind kind);

struct SpectrumSet {
  u64 d = 1;
  SpectrumKind kind = SpectrumKind::Cesaro;
  double epsilon = 0.0;
  double threshold = 0.0;
  Bitset members;  // full Z/dZ view, 0 included when it qualifies

  Bitset nonzero() const;
  std::vector<u64> list() const;
};

// {l : |S_l(x)| >= eps x}
SpectrumSet spectrum_cesaro(const SumsTable& sums, double eps);
// {l : M(chi^l) >= eps sqrt(q) log q}
SpectrumSet spectrum_maximal(const MaxTable& table, u64 q, double eps);

Bitset sumset(const Bitset& a, const Bitset& b);
// m-fold sumset; throws for empty S or m == 0.
Bitset iterated_sumset(const Bitset& s, u64 m);
Bitset multiples_of(u64 g, u64 d);

struct StabilizationReport {
  u64 m = 0;
  Bitset H;
  u64 g = 0;
  bool is_subgroup = false;
  bool contains_S = false;
  bool stabilized = false;
};

// Smallest m <= d with (m+1)S = mS. Throws std::invalid_argument when S is
// not symmetric or misses 0.
StabilizationReport stabilize(const Bitset& s);

// #{1 <= l <= r : ||j0 l / r|| <= theta}
u64 discrepancy_count(u64 j0, u64 r, double theta);

struct StructureOptions {
  u64 xi_conductor_max = 40;
};

struct StructureReport {
  u64 q = 0;
  u64 index = 0;
  u64 d = 0;
  u64 x = 0;
  SpectrumKind kind = SpectrumKind::Cesaro;
  double epsilon = 0.0;
  u64 members_count = 0;
  bool hypothesis_met = false;
  u64 m = 0;
  u64 g = 0;
  u64 H_size = 0;
  bool m_within = false;  // m <= eps^-2
  bool g_within = false;  // g <= 1/eps
  bool subset_ok = false;
  bool subgroup_ok = false;
  double bound_lhs = 0.0;  // max over 1 <= l <= d/g of the distance
  double bound_rhs = 0.0;
  double ratio = 0.0;
  u64 xi_conductor = 0;  // maximal kind: best xi found
  u64 xi_index = 0;
  bool pass = true;
  std::string note;
};

// x is ignored for the maximal kind (x = q).
StructureReport structure_check(const DirichletCharacter& chi, u64 x, double eps,
                                SpectrumKind kind, const StructureOptions& opts = {});

}  // namespace charsum
