#include "config.hpp"

#include <cstdio>

#include "charsum/numeric.hpp"

namespace charsum::harness {

void ExperimentConfig::validate() const {
  if (moduli.empty() && q_min > q_max) throw ConfigError("empty modulus range");
  if (q_min < 3) throw ConfigError("q-min must be at least 3");
  for (u64 q : moduli)
    if (q < 3) throw ConfigError("moduli must be at least 3");
  if (d_max && d_min && *d_min > d_max) throw ConfigError("empty order range");
  if (delta && !(*delta > 0.0 && *delta <= 1.0)) throw ConfigError("delta must lie in (0, 1]");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (kind != "cesaro" && kind != "maximal" && kind != "both")
    throw ConfigError("kind must be cesaro, maximal or both");
  for (u64 K : Ks)
    if (K == 0) throw ConfigError("K must be positive");
  if (Ks.empty()) throw ConfigError("K list is empty");
  if (k == 0 || z < 2) throw ConfigError("need k >= 1 and z >= 2");
  if (!(z_step > 0.0)) throw ConfigError("z-step must be positive");
  if (V == 0 || grid == 0 || M == 0 || N < 2) throw ConfigError("V, grid, M must be positive and N >= 2");
  if (!(tolerance >= 0.0)) throw ConfigError("tolerance must be nonnegative");
  if (!(T > 0.0)) throw ConfigError("T must be positive");
}

FamilySpec ExperimentConfig::family(u64 default_d_min) const {
  FamilySpec s;
  s.q_min = q_min;
  s.q_max = q_max;
  s.moduli = moduli;
  s.primes_only = primes;
  s.d_min = d_min.value_or(default_d_min);
  s.d_max = d_max;
  s.pow2_only = pow2;
  s.squarefree_only = squarefree;
  s.primitive_only = primitive;
  s.one_per_order = one_per_order;
  return s;
}

XPolicy ExperimentConfig::x_policy() const { return XPolicy{xc, delta_floor, x_floor}; }

nlohmann::ordered_json ExperimentConfig::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["q_min"] = q_min;
  j["q_max"] = q_max;
  j["moduli"] = moduli;
  j["primes"] = primes;
  j["primitive"] = primitive;
  j["one_per_order"] = one_per_order;
  j["pow2"] = pow2;
  j["squarefree"] = squarefree;
  j["d_min"] = d_min ? nlohmann::ordered_json(*d_min) : nlohmann::ordered_json();
  j["d_max"] = d_max;
  j["x"] = x;
  j["delta"] = delta ? nlohmann::ordered_json(*delta) : nlohmann::ordered_json();
  j["epsilon"] = epsilon;
  j["kind"] = kind;
  j["tau"] = tau;
  j["K"] = Ks;
  j["k"] = k;
  j["z"] = z;
  j["z_step"] = z_step;
  j["c1"] = c1;
  j["c2"] = c2;
  j["xc"] = xc;
  j["delta_floor"] = delta_floor;
  j["x_floor"] = x_floor;
  j["q_cap"] = q_cap;
  j["T"] = T;
  j["seed"] = seed;
  j["n"] = n ? nlohmann::ordered_json(*n) : nlohmann::ordered_json();
  j["V"] = V;
  j["grid"] = grid;
  j["M"] = M;
  j["N"] = N;
  j["tolerance"] = tolerance;
  return j;
}

std::string ExperimentConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(to_json().dump())));
  return buf;
}

void add_experiment_options(CLI::App& app, ExperimentConfig& c) {
  app.add_option("--q-min", c.q_min, "smallest modulus");
  app.add_option("--q-max", c.q_max, "largest modulus");
  app.add_option("--moduli", c.moduli, "explicit moduli (overrides the range)")->delimiter(',');
  app.add_flag("--primes", c.primes, "prime moduli only");
  app.add_flag("--primitive", c.primitive, "primitive characters only");
  app.add_flag("--one-per-order", c.one_per_order, "first character of each order per modulus");
  app.add_flag("--pow2", c.pow2, "orders that are powers of two");
  app.add_flag("--squarefree", c.squarefree, "squarefree orders");
  app.add_option("--d-min", c.d_min, "smallest order");
  app.add_option("--d-max", c.d_max, "largest order (0: none)");
  app.add_option("--x", c.x, "absolute x");
  app.add_option("--delta", c.delta, "x = floor(q^delta)");
  app.add_option("--epsilon", c.epsilon, "spectrum threshold");
  app.add_option("--kind", c.kind, "cesaro, maximal or both");
  app.add_option("--tau", c.tau);
  app.add_option("--K", c.Ks, "Erdos-Turan levels")->delimiter(',');
  app.add_option("--k", c.k, "number of prime factors");
  app.add_option("--z", c.z, "prime bound");
  app.add_option("--z-step", c.z_step);
  app.add_option("--c1", c.c1);
  app.add_option("--c2", c.c2);
  app.add_option("--xc", c.xc, "exponent c in the x policy");
  app.add_option("--delta-floor", c.delta_floor);
  app.add_option("--x-floor", c.x_floor);
  app.add_option("--q-cap", c.q_cap, "largest modulus for maximal-sum suites");
  app.add_option("--T", c.T, "twist range");
  app.add_option("--seed", c.seed);
  app.add_option("--n", c.n, "number of random instances");
  app.add_option("--V", c.V, "Fourier truncation");
  app.add_option("--grid", c.grid, "t-grid size");
  app.add_option("--M", c.M, "stratification cutoff");
  app.add_option("--N", c.N, "range of n");
  app.add_option("--tolerance", c.tolerance, "snapshot regression tolerance");
  app.add_option("--json", c.json_path, "report JSON path");
  app.add_option("--csv", c.csv_path, "report CSV path");
}

}  // namespace charsum::harness
