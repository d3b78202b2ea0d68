#pragma once

#include <boost/rational.hpp>

#include <complex>
#include <numbers>
#include <vector>

#include "charsum/arith.hpp"
#include "charsum/characters.hpp"
#include "charsum/pretentious.hpp"

namespace charsum {

// ||t||^2, squared distance to the nearest integer.
double normsq(double t);

struct FourierValue {
  double value = 0.0;
  double tail_bound = 0.0;  // 1 / (pi^2 V)
};
// 1/12 + (1/2 pi^2) sum_{0 < |v| <= V} (-1)^v e(vt) / v^2
FourierValue fourier_normsq(double t, u64 V);

enum class DeltaMethod { Direct, Stratified };

struct DeltaResult {
  double value = 0.0;
  double budget = 0.0;  // Sigma^2 / M for the stratified method, 0 for direct
  double sigma_total = 0.0;
};

// sigma[j] for j = 0..d-1 (sigma[0] is ignored); r must divide d.
DeltaResult variance_delta(const std::vector<double>& sigma, u64 r, DeltaMethod method,
                           u64 M = 1000);
DeltaResult variance_delta(const SigmaProfile& sigma, u64 r, DeltaMethod method, u64 M = 1000);

using SmallRational = boost::rational<i64>;

// f_t(n) = sum_{ab = t} mu(b)/b 1_{a | n}
SmallRational mean_zero_f(const FactoredInteger& t, u64 n);

struct FtCorrelation {
  Rational sum;   // sum_{n <= x} f_{t1}(n) f_{t2}(n)
  Rational main;  // x phi(t)/t^2 when t1 = t2 = t, else 0
  double deviation = 0.0;  // |sum - main|
  u64 bound = 0;           // d(t1) d(t2)
  bool ok = false;
};
FtCorrelation ft_correlation(const FactoredInteger& t1, const FactoredInteger& t2, u64 x);

struct TkzSet {
  u64 k = 0;
  u64 z = 0;
  u64 j0 = 0;
  std::vector<u64> level_primes;
  std::vector<FactoredInteger> members;  // ascending by value
};
// Products of k primes p <= z (with repetition) with chi(p) = zeta^{j0}.
TkzSet enumerate_tkz(const DirichletCharacter& chi, u64 j0, u64 k, u64 z);

struct CorrelationSweep {
  u64 pairs = 0;
  u64 violations = 0;
  double max_ratio = 0.0;  // max |sum - main| / (d(t1) d(t2))
};
// Every ordered pair of members.
CorrelationSweep ft_correlation_sweep(const TkzSet& set, u64 x);
CorrelationSweep ft_correlation_sweep_serial(const TkzSet& set, u64 x);

inline constexpr double kLipschitzExponent = 1.0 - 2.0 / std::numbers::pi;

struct AkzTerms {
  std::complex<double> A;
  std::complex<double> sum_M;
  double sum_delta = 0.0;
  std::complex<double> mean;  // (1/x) sum_{n <= x} h(n)
  double residual = 0.0;      // |A mean - sum_M|
  double ratio = 0.0;         // residual / sum_delta
  u64 members = 0;
};
// h(n) = chi^{g l}(n) n^{-iy}; throws "constraint violated" when z^k > x^{1/3}.
AkzTerms akz_terms(const DirichletCharacter& chi, u64 g, u64 l, u64 j0, u64 k, u64 z, u64 x,
                   double y, double rho = kLipschitzExponent);

// (1/sigma_{j0}(z)) sum_{p <= z, level j0} p^{-iy}/p; throws on an empty level set.
std::complex<double> theta_j0(const DirichletCharacter& chi, u64 j0, double z, double y);
std::complex<double> theta_j0(const UnimodularMultiplicative& f, u64 j0, double z, double y);

// Omega(n) = #{p^k | n : f(p) = e(j0/D)}, completely additive.
class OmegaFunction {
 public:
  OmegaFunction(u64 j0, UnimodularMultiplicative carrier);

  u64 j0() const { return j0_; }
  const UnimodularMultiplicative& carrier() const { return f_; }
  u64 limit() const { return f_.limit(); }
  bool counts(u64 p) const;
  u64 operator()(u64 n) const;
  // Omega(n) for n = 0..N (entry 0 unused).
  std::vector<std::uint8_t> table(u64 N) const;

 private:
  u64 j0_;
  UnimodularMultiplicative f_;
};

enum class Weighting { Cesaro, Logarithmic };

struct OmegaMoments {
  double sigma = 0.0;   // sum_{p <= x, level j0} 1/p
  double mean = 0.0;    // (1/x) sum Omega  or  (1/log x) sum Omega/n
  double second = 0.0;  // same weights applied to (Omega - sigma)^2
  double ratio = 0.0;   // second / sigma, 0 when sigma = 0
  // Logarithmic only: c_j with (1/sigma^j) sum Omega^j / n = log x (1 + c_j / sigma).
  double c1 = 0.0;
  double c2 = 0.0;
};
OmegaMoments omega_moments(const OmegaFunction& omega, u64 x, Weighting weighting);

struct RotationResidual {
  double rotation = 0.0;  // |1 - omega^{j0 l}|
  std::complex<double> L;
  double lhs = 0.0;     // rotation |L|
  double budget = 0.0;  // log N / sqrt(sigma~_{j0}(N))
  double ratio = 0.0;
};
RotationResidual rotation_residual(const UnimodularMultiplicative& psi, u64 l, u64 j0, u64 N);

}  // namespace charsum
