#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "charsum/numeric.hpp"
#include "charsum/parallel.hpp"
#include "charsum/spectrum.hpp"
#include "charsum/sums.hpp"
#include "config.hpp"
#include "report.hpp"
#include "suites.hpp"

using namespace charsum;
using namespace charsum::harness;

namespace {

struct CharArgs {
  u64 modulus = 0;
  u64 index = 0;
  u64 order = 0;
  bool primitive = false;
  std::optional<u64> x;
  std::vector<u64> ells;
  double epsilon = 0.5;
  std::string kind = "cesaro";
  std::string csv_path;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty())
    std::cout << text;
  else
    write_file(path, text);
}

DirichletCharacter pick(const CharArgs& a) {
  const GroupPtr g = build_group(a.modulus);
  if (a.index >= g->size())
    throw ConfigError("index " + std::to_string(a.index) + " out of range for modulus " +
                      std::to_string(a.modulus));
  return character_from_index(g, a.index);
}

std::vector<u64> ell_list(const CharArgs& a, u64 d) {
  if (a.ells.empty()) {
    std::vector<u64> all(d);
    for (u64 l = 0; l < d; ++l) all[l] = l;
    return all;
  }
  std::vector<u64> out;
  for (u64 l : a.ells) out.push_back(l % d);
  return out;
}

std::string exponent_string(const DirichletCharacter& chi) {
  std::string s;
  for (u64 e : chi.exponents()) s += (s.empty() ? "" : " ") + std::to_string(e);
  return s;
}

int chars_list(const CharArgs& a) {
  std::string out = "q,index,exponent_vector,order,conductor,primitive\n";
  for (const auto& chi : enumerate_characters(build_group(a.modulus), a.order, a.primitive))
    out += std::to_string(chi.modulus()) + ',' + std::to_string(chi.index()) + ',' +
           exponent_string(chi) + ',' + std::to_string(chi.order()) + ',' +
           std::to_string(chi.conductor()) + ',' + (chi.primitive() ? "true" : "false") + '\n';
  emit(out, a.csv_path);
  return 0;
}

int chars_describe(const CharArgs& a) {
  auto j = describe_json(pick(a));
  j["primitive"] = pick(a).primitive();
  std::cout << j.dump(2) << '\n';
  return 0;
}

int sums(const CharArgs& a) {
  const auto chi = pick(a);
  const u64 x = a.x.value_or(chi.modulus());
  const SumsTable st = sums_all_powers(level_counts(chi, x));
  std::string out = "q,index,ell,re,im,abs\n";
  for (u64 l : ell_list(a, chi.order())) {
    const auto v = st.values[l];
    out += std::to_string(chi.modulus()) + ',' + std::to_string(chi.index()) + ',' + std::to_string(l) +
           ',' + format_double(v.real()) + ',' + format_double(v.imag()) + ',' +
           format_double(std::abs(v)) + '\n';
  }
  emit(out, a.csv_path);
  return 0;
}

int max_sums(const CharArgs& a) {
  const auto chi = pick(a);
  const MaxTable mt = max_all_powers(chi);
  std::string out = "q,index,ell,M,argmax_t\n";
  for (u64 l : ell_list(a, chi.order()))
    out += std::to_string(chi.modulus()) + ',' + std::to_string(chi.index()) + ',' + std::to_string(l) +
           ',' + format_double(mt.entries[l].value) + ',' + std::to_string(mt.entries[l].argmax) + '\n';
  emit(out, a.csv_path);
  return 0;
}

int spectrum(const CharArgs& a) {
  if (!(a.epsilon > 0)) throw ConfigError("epsilon must be positive");
  const auto chi = pick(a);
  const u64 q = chi.modulus();
  std::vector<SpectrumKind> kinds;
  if (a.kind != "maximal") kinds.push_back(SpectrumKind::Cesaro);
  if (a.kind != "cesaro") kinds.push_back(SpectrumKind::Maximal);
  if (a.kind != "cesaro" && a.kind != "maximal" && a.kind != "both")
    throw ConfigError("kind must be cesaro, maximal or both");
  std::string out = "q,index,kind,epsilon,members_count,m,g,H_size,bound_lhs,bound_rhs,ratio,members\n";
  for (auto kind : kinds) {
    const u64 x = kind == SpectrumKind::Cesaro ? a.x.value_or(q) : q;
    const SpectrumSet set = kind == SpectrumKind::Cesaro
                                ? spectrum_cesaro(sums_all_powers(level_counts(chi, x)), a.epsilon)
                                : spectrum_maximal(max_all_powers(chi), q, a.epsilon);
    const StructureReport s = structure_check(chi, x, a.epsilon, kind);
    std::string members;
    for (u64 l : set.list()) members += (members.empty() ? "" : " ") + std::to_string(l);
    out += std::to_string(q) + ',' + std::to_string(chi.index()) + ',' + to_string(kind) + ',' +
           format_double(a.epsilon) + ',' + std::to_string(set.members.count()) + ',' +
           std::to_string(s.m) + ',' + std::to_string(s.g) + ',' + std::to_string(s.H_size) + ',' +
           format_double(s.bound_lhs) + ',' + format_double(s.bound_rhs) + ',' +
           format_double(s.ratio) + ',' + members + '\n';
  }
  emit(out, a.csv_path);
  return 0;
}

void list_suites() {
  for (const auto& s : suites()) {
    std::printf("%-15s %-7s %s\n", s.name.c_str(), s.hard ? "assert" : "report", s.statement.c_str());
  }
}

int verify(const ExperimentConfig& cfg) {
  const Report rep = run_suite(cfg);
  const auto js = rep.to_json().dump(2) + '\n';
  emit(js, cfg.json_path);
  if (!cfg.csv_path.empty()) write_file(cfg.csv_path, rep.to_csv());
  const Summary s = rep.summary();
  std::fprintf(stderr, "%s: %llu rows, %llu failures, max ratio %s\n", rep.suite.c_str(),
               static_cast<unsigned long long>(s.n), static_cast<unsigned long long>(s.failures),
               format_double(s.max_ratio).c_str());
  return s.failures ? 1 : 0;
}

int snapshot(const std::string& action, const ExperimentConfig& cfg) {
  if (cfg.snapshot_path.empty()) throw ConfigError("--snapshot is required");
  if (action == "compare") {
    std::ifstream in(cfg.snapshot_path);
    if (!in) {
      std::fprintf(stderr, "snapshot not found: %s\n", cfg.snapshot_path.c_str());
      return 2;
    }
    Snapshot recorded;
    try {
      recorded = Snapshot::from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("unreadable snapshot: ") + e.what());
    }
    const Report rep = run_suite(cfg);
    if (!cfg.json_path.empty()) write_file(cfg.json_path, rep.to_json().dump(2) + '\n');
    const Comparison c = compare(recorded, Snapshot::of(rep, cfg.tolerance));
    for (const auto& m : c.messages) std::fprintf(stderr, "%s\n", m.c_str());
    std::fprintf(stderr, "%s: %s, digest %s, worst change %s\n", cfg.suite.c_str(),
                 c.ok() ? "ok" : "REGRESSION", c.digest_match ? "identical" : "changed",
                 format_double(c.worst_change).c_str());
    return c.ok() ? 0 : 1;
  }
  const Report rep = run_suite(cfg);
  write_file(cfg.snapshot_path, Snapshot::of(rep, cfg.tolerance).to_json().dump(1) + '\n');
  if (!cfg.json_path.empty()) write_file(cfg.json_path, rep.to_json().dump(2) + '\n');
  std::fprintf(stderr, "%s: wrote %s (%zu rows)\n", cfg.suite.c_str(), cfg.snapshot_path.c_str(),
               rep.rows.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  configure_threads();
  CLI::App app{"Dirichlet character sum experiments"};
  app.set_config("--config", "", "INI file with experiment settings; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  ExperimentConfig cfg;
  add_experiment_options(app, cfg);

  CharArgs ca;
  auto char_opts = [&](CLI::App* s, bool with_index) {
    s->add_option("--modulus", ca.modulus, "modulus q")->required();
    if (with_index) s->add_option("--index", ca.index, "character index");
  };

  auto* chars = app.add_subcommand("chars", "character inventory");
  chars->require_subcommand(1);
  auto* list = chars->add_subcommand("list", "characters mod q as CSV");
  char_opts(list, false);
  list->add_option("--order", ca.order, "keep this order only");
  auto* describe = chars->add_subcommand("describe", "descriptor of one character as JSON");
  char_opts(describe, true);

  auto* sums_cmd = app.add_subcommand("sums", "S_{chi^l}(x) for every power l");
  char_opts(sums_cmd, true);
  sums_cmd->add_option("--ell", ca.ells, "powers to print")->delimiter(',');

  auto* max_cmd = app.add_subcommand("max", "maximal sums M(chi^l)");
  char_opts(max_cmd, true);
  max_cmd->add_option("--ell", ca.ells, "powers to print")->delimiter(',');

  auto* spec_cmd = app.add_subcommand("spectrum", "large spectrum and its stabilization");
  char_opts(spec_cmd, true);

  bool list_only = false;
  auto* verify_cmd = app.add_subcommand("verify", "run a suite and emit its report");
  verify_cmd->add_option("suite", cfg.suite, "suite name");
  verify_cmd->add_flag("--list-suites", list_only, "list suites and the statements they check");

  std::string action;
  auto* snap = app.add_subcommand("snapshot", "record or compare a suite snapshot");
  snap->add_option("action", action, "update or compare")->required()->check(CLI::IsMember({"update", "compare"}));
  snap->add_option("suite", cfg.suite, "suite name")->required();
  snap->add_option("--snapshot", cfg.snapshot_path, "snapshot path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  // shared flags (--x, --epsilon, --kind, --primitive, --csv) live on the root
  if (cfg.x) ca.x = cfg.x;
  ca.epsilon = cfg.epsilon;
  ca.kind = cfg.kind;
  ca.primitive = cfg.primitive;
  ca.csv_path = cfg.csv_path;

  try {
    if (*list) return chars_list(ca);
    if (*describe) return chars_describe(ca);
    if (*sums_cmd) return sums(ca);
    if (*max_cmd) return max_sums(ca);
    if (*spec_cmd) return spectrum(ca);
    if (*verify_cmd) {
      if (list_only) {
        list_suites();
        return 0;
      }
      if (cfg.suite.empty() || !find_suite(cfg.suite)) {
        std::fprintf(stderr, "unknown suite '%s'\n%s", cfg.suite.c_str(), verify_cmd->help().c_str());
        std::fprintf(stderr, "suites:\n");
        for (const auto& s : suites()) std::fprintf(stderr, "  %s\n", s.name.c_str());
        return 2;
      }
      return verify(cfg);
    }
    if (*snap) {
      if (!find_suite(cfg.suite)) {
        std::fprintf(stderr, "unknown suite '%s'\n", cfg.suite.c_str());
        return 2;
      }
      return snapshot(action, cfg);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return 0;
}
