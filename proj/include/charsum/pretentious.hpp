#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <vector>

#include "charsum/characters.hpp"

namespace charsum {

using Rational = boost::multiprecision::cpp_rational;

struct SigmaProfile {
  u64 d = 1;
  double y = 0.0;
  std::vector<double> sigma;  // sigma[j] = sum of 1/p over p <= y with value e(j/d)
  double total = 0.0;         // sum over j >= 1
  u64 j_max = 0;              // argmax over j >= 1, smallest on ties; 0 if d == 1
};

SigmaProfile sigma_profile(const DirichletCharacter& chi, double y);
SigmaProfile sigma_profile(const UnimodularMultiplicative& f, double y);
// Memoized by (q, index, y); safe to call concurrently.
const SigmaProfile& cached_sigma_profile(const DirichletCharacter& chi, double y);

// D(f, g; y)^2 = sum_{p <= y} (1 - Re f(p) conj g(p)) / p.
double distance_sq(const UnimodularMultiplicative& f, const UnimodularMultiplicative& g, double y);
// Exact value when every cosine involved is rational and y <= 10^4.
std::optional<Rational> distance_sq_exact(const UnimodularMultiplicative& f,
                                          const UnimodularMultiplicative& g, double y);
// max over 1 <= l <= lmax of D(psi^l, 1; y)^2, from one pass over the primes.
double max_power_distance_sq(const UnimodularMultiplicative& psi, double y, u64 lmax);

// D(f, n^{it}; y)^2.
double distance_to_twist_sq(const UnimodularMultiplicative& f, double t, double y);

struct TwistResult {
  i64 ell = 0;
  double y = 0.0;          // after the zeroing rule
  double y_search = 0.0;   // maximiser before the zeroing rule
  bool zeroed = false;
  double objective = 0.0;  // |F(1 + i y)|
  double window = 0.0;
  double step = 0.0;
  u64 grid_points = 0;
};

// log |F(1 + iy)| with F(s) = prod_{p <= x} (1 - f(p) p^{-s})^{-1}.
double log_euler_product(const UnimodularMultiplicative& f, double x, double y);

// Grid search over |y| <= window at step pi / (8 log x) / refine, then three
// golden-section steps around the best grid point. Throws if window > 2 log x.
TwistResult twist_search(const UnimodularMultiplicative& f, double x, double window,
                         double refine = 1.0);

// Both sides of 1 - cos(2 pi theta) >= 8 ||theta||^2 summed against sigma:
// lhs = sum_j (1 - cos(2 pi j l / r)) sigma_j, rhs = 8 sum_j ||j l / r||^2 sigma_j.
struct ToFE {
  double lhs = 0.0;
  double rhs = 0.0;
};
ToFE tofe_sides(const SigmaProfile& sigma, u64 l, u64 r);

double dist_to_nearest_integer(double t);

}  // namespace charsum
