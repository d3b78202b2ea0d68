#pragma once

#include <exception>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "charsum/characters.hpp"
#include "charsum/sums.hpp"

namespace charsum {

using ParamValue = std::variant<i64, double, std::string, bool>;

struct BoundRow {
  std::string suite;
  u64 q = 0;
  u64 index = 0;
  u64 d = 0;
  std::vector<std::pair<std::string, ParamValue>> params;
  double lhs = 0.0;
  double rhs = 0.0;
  std::optional<double> ratio;  // lhs / rhs when rhs > 0
  std::optional<bool> pass;     // empty for report-only rows
  std::string note;

  BoundRow& param(std::string name, ParamValue v);
  const ParamValue* find(const std::string& name) const;
  void finish();  // fills ratio from lhs and rhs
};

BoundRow row_for(const std::string& suite, const DirichletCharacter& chi);

// log log (e d) with natural logarithms.
double loglog_ed(u64 d);

// Exact and explicit-constant checks.
BoundRow orthogonality_check(const DirichletCharacter& chi);
BoundRow pair_count_identity(const DirichletCharacter& chi, u64 x);
BoundRow passto_pow_check(const DirichletCharacter& chi, u64 x);
BoundRow passto_pow_check(const DirichletCharacter& chi, const LevelCounts& counts);
std::vector<BoundRow> et_level_check(const DirichletCharacter& chi, u64 x, std::span<const u64> Ks);
BoundRow et_level_check(const DirichletCharacter& chi, u64 x, u64 K);
BoundRow pv_check(const DirichletCharacter& chi);

// Erdos-Turan over every character mod q. Characters generating the same
// cyclic subgroup share one level-count pass: chi^a relabels the levels of chi.
struct EtSweep {
  u64 characters = 0;
  u64 checks = 0;
  u64 violations = 0;
  double max_ratio = 0.0;
  u64 worst_q = 0, worst_index = 0, worst_x = 0, worst_K = 0;
};
void et_level_sweep_modulus(u64 q, std::span<const u64> xs, std::span<const u64> Ks, EtSweep& acc);

// Report-only analytic bounds.
BoundRow hmt_check(const UnimodularMultiplicative& f, u64 x, double T);
BoundRow hmt_check(const DirichletCharacter& chi, u64 x, double T);
BoundRow gslog_check(const UnimodularMultiplicative& f, u64 x);
BoundRow gslog_check(const DirichletCharacter& chi, u64 x);
// min over |t| <= T of D(f, n^{it}; x)^2 by grid plus golden-section refinement.
std::pair<double, double> min_twist_distance_sq(const UnimodularMultiplicative& f, double x,
                                                double T);

struct XPolicy {
  double c = 1.0;
  double delta_floor = 0.5;
  u64 x_floor = 1000;
};
// delta = max(((log log ed)/(c log ed))^{1/2}, (log q)^{-c}, delta_floor)
double theorem_delta(u64 q, u64 d, const XPolicy& p);
// smallest integer above q^delta, raised to min(x_floor, q)
u64 theorem_x(u64 q, double delta, const XPolicy& p);

struct Thm1Options {
  double tau = 0.1;
  XPolicy x;
};
struct Thm2Options {
  double c1 = 1.0;
  double c2 = 1.0;
  double z_step = 0.25;
  double pow2_slack = 0.1;
  XPolicy x;
};
struct Thm4Options {
  u64 q_cap = 5000;
};
struct TkOptions {
  u64 N = 100000;
};

BoundRow thm1_row(const DirichletCharacter& chi, const Thm1Options& opt);
BoundRow thm2_row(const DirichletCharacter& chi, const Thm2Options& opt);
BoundRow pplus_row(const DirichletCharacter& chi, const Thm2Options& opt);
BoundRow thm4_row(const DirichletCharacter& chi, const Thm4Options& opt);
BoundRow tk_row(const DirichletCharacter& chi, const TkOptions& opt);

// Rows for a family, parallel across characters, in family order.
std::vector<BoundRow> thm1_report(const std::vector<DirichletCharacter>& family,
                                  const Thm1Options& opt);
std::vector<BoundRow> thm2_report(const std::vector<DirichletCharacter>& family,
                                  const Thm2Options& opt);
std::vector<BoundRow> pplus_report(const std::vector<DirichletCharacter>& family,
                                   const Thm2Options& opt);
std::vector<BoundRow> thm4_report(const std::vector<DirichletCharacter>& family,
                                  const Thm4Options& opt);
std::vector<BoundRow> tk_report(const std::vector<DirichletCharacter>& family,
                                const TkOptions& opt);

// fn(i) for i < n across threads; the first exception (by index) is rethrown.
template <class Fn>
std::vector<BoundRow> rows_parallel(std::size_t n, Fn fn) {
  std::vector<BoundRow> rows(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      rows[i] = fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

}  // namespace charsum
