#pragma once

// Hot loops behind the sum engine. Each kernel has a serial form, an OpenMP
// form with an exact (integer or index-ordered) merge, and the sum engine
// calls the OpenMP form. The reference_* functions evaluate the character one
// value at a time and exist for tests and benchmarks.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "charsum/characters.hpp"

namespace charsum::kernels {

// Histogram of sum_i w_i s_i mod d over the box 0 <= s_i < orders_i.
void box_counts_serial(std::span<const u64> orders, std::span<const u64> weights, u64 d,
                       std::span<u64> counts);
void box_counts_parallel(std::span<const u64> orders, std::span<const u64> weights, u64 d,
                         std::span<u64> counts);

// Histogram of chi(n) for lo <= n < hi (n read mod q) from residue logs.
void residue_counts_serial(const CharacterGroup& group, std::span<const u64> weights, u64 d,
                           u64 lo, u64 hi, std::span<u64> counts);
void residue_counts_parallel(const CharacterGroup& group, std::span<const u64> weights, u64 d,
                             u64 lo, u64 hi, std::span<u64> counts);

// Running maximum of |sum_{n<=t} e(l a_n / d)| over the listed steps, for
// each l in ells. steps holds (n, a_n) for the coprime n in increasing order.
// A positive stop_at ends a scan once the modulus reaches it.
struct Step {
  std::uint32_t n;
  std::uint32_t a;
};
struct PrefixMax {
  double value = 0.0;
  u64 argmax = 0;
  bool complete = true;
};
void prefix_max_serial(std::span<const Step> steps, u64 d, std::span<const u64> ells,
                       double stop_at, std::span<PrefixMax> out);
void prefix_max_parallel(std::span<const Step> steps, u64 d, std::span<const u64> ells,
                         double stop_at, std::span<PrefixMax> out);

std::vector<u64> reference_level_counts(const DirichletCharacter& chi, u64 x);
std::complex<double> reference_sum(const DirichletCharacter& chi, i64 l, u64 x);
PrefixMax reference_prefix_max(const DirichletCharacter& chi, i64 l);

}  // namespace charsum::kernels
