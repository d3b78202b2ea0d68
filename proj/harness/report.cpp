#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "charsum/numeric.hpp"

namespace charsum::harness {

namespace {

std::string hex(u64 v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json json_value(const ParamValue& v) {
  return std::visit([](const auto& x) { return nlohmann::ordered_json(x); }, v);
}

nlohmann::ordered_json json_double(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(format_double(v));
}

}  // namespace

std::string render(const ParamValue& v) {
  struct {
    std::string operator()(i64 x) const { return std::to_string(x); }
    std::string operator()(double x) const { return format_double(x); }
    std::string operator()(const std::string& x) const { return x; }
    std::string operator()(bool x) const { return x ? "true" : "false"; }
  } visitor;
  return std::visit(visitor, v);
}

nlohmann::ordered_json describe_json(const DirichletCharacter& chi) {
  nlohmann::ordered_json j;
  j["q"] = chi.modulus();
  j["index"] = chi.index();
  j["exponent_vector"] = chi.exponents();
  j["order"] = chi.order();
  j["conductor"] = chi.conductor();
  return j;
}

std::vector<std::string> Report::columns() const {
  std::vector<std::string> params;
  for (const auto& r : rows)
    for (const auto& [name, _] : r.params)
      if (std::find(params.begin(), params.end(), name) == params.end()) params.push_back(name);
  std::vector<std::string> cols{"q", "index", "d"};
  cols.insert(cols.end(), params.begin(), params.end());
  for (const char* c : {"lhs", "rhs", "ratio", "pass", "note"}) cols.push_back(c);
  return cols;
}

std::string Report::to_csv() const {
  const auto cols = columns();
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.q) + ',' + std::to_string(r.index) + ',' + std::to_string(r.d);
    for (std::size_t c = 3; c + 5 < cols.size(); ++c) {
      out += ',';
      if (const auto* v = r.find(cols[c])) out += csv_field(render(*v));
    }
    out += ',' + format_double(r.lhs) + ',' + format_double(r.rhs) + ',';
    if (r.ratio) out += format_double(*r.ratio);
    out += ',';
    if (r.pass) out += *r.pass ? "true" : "false";
    out += ',' + csv_field(r.note) + '\n';
  }
  return out;
}

Summary Report::summary() const {
  Summary s;
  s.n = rows.size();
  for (const auto& r : rows) {
    if (r.pass && !*r.pass) ++s.failures;
    if (r.ratio && std::isfinite(*r.ratio)) s.max_ratio = std::max(s.max_ratio, *r.ratio);
  }
  s.snapshot_hash = hex(fnv1a(to_csv()));
  return s;
}

nlohmann::ordered_json Report::to_json() const {
  const auto cols = columns();
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["config"] = config;
  j["config_hash"] = config_hash;
  auto& chars = j["characters"] = nlohmann::ordered_json::array();
  for (const auto& c : characters) chars.push_back(describe_json(c));
  auto& out = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["q"] = r.q;
    row["index"] = r.index;
    row["d"] = r.d;
    for (std::size_t c = 3; c + 5 < cols.size(); ++c) {
      const auto* v = r.find(cols[c]);
      row[cols[c]] = v ? json_value(*v) : nlohmann::ordered_json();
      if (v && std::holds_alternative<double>(*v)) row[cols[c]] = json_double(std::get<double>(*v));
    }
    row["lhs"] = json_double(r.lhs);
    row["rhs"] = json_double(r.rhs);
    row["ratio"] = r.ratio ? json_double(*r.ratio) : nlohmann::ordered_json();
    row["pass"] = r.pass ? nlohmann::ordered_json(*r.pass) : nlohmann::ordered_json();
    row["note"] = r.note;
    out.push_back(std::move(row));
  }
  const Summary s = summary();
  j["summary"] = {{"n", s.n},
                  {"failures", s.failures},
                  {"max_ratio", json_double(s.max_ratio)},
                  {"snapshot_hash", s.snapshot_hash}};
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path);
}

Snapshot Snapshot::of(const Report& r, double tolerance) {
  Snapshot s;
  s.suite = r.suite;
  s.config_hash = r.config_hash;
  s.tolerance = tolerance;
  s.summary = r.summary();
  bool first = true;
  for (const auto& row : r.rows) {
    s.ratios.push_back(row.ratio);
    if (!row.ratio || !std::isfinite(*row.ratio)) continue;
    s.band_min = first ? *row.ratio : std::min(s.band_min, *row.ratio);
    s.band_max = first ? *row.ratio : std::max(s.band_max, *row.ratio);
    first = false;
  }
  return s;
}

nlohmann::ordered_json Snapshot::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["config_hash"] = config_hash;
  j["tolerance"] = tolerance;
  j["summary"] = {{"n", summary.n},
                  {"failures", summary.failures},
                  {"max_ratio", summary.max_ratio},
                  {"snapshot_hash", summary.snapshot_hash}};
  j["band"] = {band_min, band_max};
  auto& rs = j["ratios"] = nlohmann::ordered_json::array();
  for (const auto& r : ratios) rs.push_back(r ? nlohmann::ordered_json(*r) : nlohmann::ordered_json());
  return j;
}

Snapshot Snapshot::from_json(const nlohmann::json& j) {
  Snapshot s;
  s.suite = j.at("suite").get<std::string>();
  s.config_hash = j.at("config_hash").get<std::string>();
  s.tolerance = j.at("tolerance").get<double>();
  const auto& sm = j.at("summary");
  s.summary.n = sm.at("n").get<u64>();
  s.summary.failures = sm.at("failures").get<u64>();
  s.summary.max_ratio = sm.at("max_ratio").get<double>();
  s.summary.snapshot_hash = sm.at("snapshot_hash").get<std::string>();
  s.band_min = j.at("band").at(0).get<double>();
  s.band_max = j.at("band").at(1).get<double>();
  for (const auto& r : j.at("ratios"))
    s.ratios.push_back(r.is_null() ? std::nullopt : std::optional<double>(r.get<double>()));
  return s;
}

Comparison compare(const Snapshot& rec, const Snapshot& cur) {
  Comparison c;
  if (rec.suite != cur.suite) {
    c.shape_mismatch = true;
    c.messages.push_back("suite differs: " + rec.suite + " vs " + cur.suite);
    return c;
  }
  if (rec.config_hash != cur.config_hash) {
    c.config_mismatch = true;
    c.messages.push_back("config hash mismatch: " + rec.config_hash + " vs " + cur.config_hash);
  }
  if (rec.ratios.size() != cur.ratios.size()) {
    c.shape_mismatch = true;
    c.messages.push_back("row count differs: " + std::to_string(rec.ratios.size()) + " vs " +
                         std::to_string(cur.ratios.size()));
    return c;
  }
  c.digest_match = rec.summary.snapshot_hash == cur.summary.snapshot_hash;
  const double tol = rec.tolerance;
  for (std::size_t i = 0; i < rec.ratios.size(); ++i) {
    const auto& a = rec.ratios[i];
    const auto& b = cur.ratios[i];
    if (a.has_value() != b.has_value()) {
      c.shape_mismatch = true;
      c.messages.push_back("row " + std::to_string(i) + ": ratio presence changed");
      continue;
    }
    if (!a) continue;
    const double base = std::abs(*a);
    const double change = base > 0 ? (*b - *a) / base : (*b > *a ? HUGE_VAL : 0.0);
    c.worst_change = std::max(c.worst_change, change);
    if (*b > *a + tol * base + 1e-15) {
      ++c.regressions;
      if (c.regressions <= 10)
        c.messages.push_back("row " + std::to_string(i) + ": ratio " + format_double(*a) + " -> " +
                             format_double(*b));
    }
  }
  if (cur.summary.failures > rec.summary.failures) {
    ++c.regressions;
    c.messages.push_back("failures rose from " + std::to_string(rec.summary.failures) + " to " +
                         std::to_string(cur.summary.failures));
  }
  return c;
}

}  // namespace charsum::harness
