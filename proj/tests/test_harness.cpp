#include <doctest.h>

#include "config.hpp"
#include "report.hpp"
#include "suites.hpp"

using namespace charsum;
using namespace charsum::harness;

namespace {

Report small_report() {
  ExperimentConfig cfg;
  cfg.suite = "passto-pow";
  cfg.q_max = 12;
  return run_suite(cfg);
}

}  // namespace

TEST_CASE("config hash and validation") {
  ExperimentConfig a;
  a.suite = "thm1";
  ExperimentConfig b = a;
  CHECK(a.hash() == b.hash());
  b.tolerance = 0.1;
  CHECK(a.hash() != b.hash());
  b = a;
  b.json_path = "elsewhere.json";
  CHECK(a.hash() == b.hash());

  ExperimentConfig bad;
  bad.q_min = 50;
  bad.q_max = 40;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = ExperimentConfig{};
  bad.delta = 1.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = ExperimentConfig{};
  bad.suite = "nope";
  CHECK_THROWS_AS(run_suite(bad), ConfigError);
}

TEST_CASE("report rendering") {
  CHECK(render(ParamValue{i64{-3}}) == "-3");
  CHECK(render(ParamValue{0.1}) == "0.1");
  CHECK(render(ParamValue{true}) == "true");

  const Report rep = small_report();
  u64 expect = 0;
  for (u64 q = 3; q <= 12; ++q) expect += 2 * totient(q);
  CHECK(rep.rows.size() == expect);
  CHECK(rep.characters.size() == expect / 2);
  const auto cols = rep.columns();
  CHECK(cols.front() == "q");
  CHECK(cols.back() == "note");
  const auto j = rep.to_json();
  CHECK(j["rows"].size() == expect);
  CHECK(j["summary"]["failures"] == 0);
  std::size_t lines = 0;
  for (char c : rep.to_csv()) lines += c == '\n';
  CHECK(lines == expect + 1);
  CHECK(rep.to_json().dump() == small_report().to_json().dump());
  CHECK(describe_json(rep.characters[0])["conductor"] == 1);
}

TEST_CASE("snapshot comparison") {
  const Report rep = small_report();
  const Snapshot s = Snapshot::of(rep, 0.05);
  const Snapshot back = Snapshot::from_json(nlohmann::json::parse(s.to_json().dump()));
  auto same = compare(back, s);
  CHECK(same.ok());
  CHECK(same.digest_match);

  Snapshot worse = s;
  for (auto& r : worse.ratios)
    if (r && *r > 0) {
      *r *= 1.04;
      break;
    }
  CHECK(compare(s, worse).ok());
  for (auto& r : worse.ratios)
    if (r && *r > 0) {
      *r *= 1.1;
      break;
    }
  CHECK(compare(s, worse).regressions == 1);
  Snapshot shorter = s;
  shorter.ratios.pop_back();
  CHECK(compare(s, shorter).shape_mismatch);
  Snapshot other = s;
  other.config_hash = "0";
  CHECK(compare(s, other).config_mismatch);
}
