#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "charsum/bounds.hpp"
#include "charsum/families.hpp"

namespace charsum::harness {

// Bad flags or values; maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string suite;
  u64 q_min = 3;
  u64 q_max = 100;
  std::vector<u64> moduli;
  bool primes = false;
  bool primitive = false;
  bool one_per_order = false;
  bool pow2 = false;
  bool squarefree = false;
  std::optional<u64> d_min;
  u64 d_max = 0;
  u64 x = 0;                    // absolute x; 0 leaves it to the suite
  std::optional<double> delta;  // x = floor(q^delta)
  double epsilon = 0.5;
  std::string kind = "cesaro";
  double tau = 0.1;
  std::vector<u64> Ks{1, 5, 20, 50};
  u64 k = 3;
  u64 z = 30;
  double z_step = 0.25;
  double c1 = 1.0;
  double c2 = 1.0;
  double xc = 1.0;
  double delta_floor = 0.5;
  u64 x_floor = 1000;
  u64 q_cap = 5000;
  double T = 1.0;
  u64 seed = 1;
  std::optional<u64> n;
  u64 V = 10000;
  u64 grid = 10000;
  u64 M = 1000;
  u64 N = 100000;
  double tolerance = 0.05;

  std::string json_path;
  std::string csv_path;
  std::string snapshot_path;

  // Throws ConfigError on empty ranges and out-of-range values.
  void validate() const;
  FamilySpec family(u64 default_d_min) const;
  XPolicy x_policy() const;
  // Everything except output paths, in a fixed key order.
  nlohmann::ordered_json to_json() const;
  std::string hash() const;
};

// Registers the experiment flags on a subcommand.
void add_experiment_options(CLI::App& app, ExperimentConfig& cfg);

}  // namespace charsum::harness
