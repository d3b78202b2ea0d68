#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "charsum/bounds.hpp"

namespace charsum::harness {

struct Summary {
  u64 n = 0;
  u64 failures = 0;
  double max_ratio = 0.0;
  std::string snapshot_hash;  // digest of the per-row ratios
};

struct Report {
  std::string suite;
  nlohmann::ordered_json config;
  std::string config_hash;
  std::vector<BoundRow> rows;
  std::vector<DirichletCharacter> characters;

  Summary summary() const;
  std::vector<std::string> columns() const;
  nlohmann::ordered_json to_json() const;
  std::string to_csv() const;
};

nlohmann::ordered_json describe_json(const DirichletCharacter& chi);

// Shortest round-trip rendering; "nan" and "inf" for non-finite values.
std::string render(const ParamValue& v);

void write_file(const std::string& path, const std::string& text);

struct Snapshot {
  std::string suite;
  std::string config_hash;
  double tolerance = 0.05;
  Summary summary;
  double band_min = 0.0;
  double band_max = 0.0;
  std::vector<std::optional<double>> ratios;

  static Snapshot of(const Report& r, double tolerance);
  nlohmann::ordered_json to_json() const;
  static Snapshot from_json(const nlohmann::json& j);
};

struct Comparison {
  bool config_mismatch = false;
  bool shape_mismatch = false;
  bool digest_match = false;
  u64 regressions = 0;
  double worst_change = 0.0;  // largest relative increase of a ratio
  std::vector<std::string> messages;

  bool ok() const { return !config_mismatch && !shape_mismatch && regressions == 0; }
};

// A ratio regresses when it grows by more than the snapshot tolerance.
Comparison compare(const Snapshot& recorded, const Snapshot& current);

}  // namespace charsum::harness
