#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "charsum/characters.hpp"

namespace charsum {

inline constexpr u64 kDeskLimit = 100'000'000;

struct LevelCounts {
  u64 d = 1;
  u64 x = 0;
  std::vector<u64> counts;  // counts[j] = #{n <= x : value e(j/d)}
  u64 noncoprime = 0;

  u64 coprime() const;
};

// floor(q^delta) evaluated in long double.
u64 cutoff(u64 q, long double delta);

// Full periods come from the exponent box, the tail from the residue table.
LevelCounts level_counts(const DirichletCharacter& chi, u64 x);
LevelCounts level_counts(const UnimodularMultiplicative& f, u64 x);

struct SumsTable {
  u64 d = 1;
  u64 x = 0;
  std::vector<std::complex<double>> values;  // values[l] = S_{chi^l}(x)
};

// Direct transform for d <= kDirectTransformLimit, FFT above.
inline constexpr u64 kDirectTransformLimit = 512;
SumsTable sums_all_powers(const LevelCounts& counts);
SumsTable sums_all_powers_direct(const LevelCounts& counts);
SumsTable sums_all_powers_fft(const LevelCounts& counts);

struct MaxEntry {
  double value = 0.0;
  u64 argmax = 0;
  bool complete = true;  // false when an early-exit threshold stopped the scan
};

struct MaxTable {
  u64 d = 1;
  std::vector<MaxEntry> entries;  // entries[l] for l = 0..d-1
};

MaxEntry maximal_sum(const DirichletCharacter& chi);
// M(chi^l) for every l; with a threshold each scan may stop once it is reached.
MaxTable max_all_powers(const DirichletCharacter& chi, std::optional<double> threshold = {});

struct LogSumSeries {
  std::vector<u64> cutoffs;
  std::vector<std::complex<double>> values;
  double max_abs = 0.0;
  u64 argmax = 0;
};

// cutoffs are sorted and deduplicated first.
LogSumSeries log_sums(const UnimodularMultiplicative& f, std::vector<u64> cutoffs);
LogSumSeries log_sums(const DirichletCharacter& chi, i64 l, std::vector<u64> cutoffs);

struct LevelMax {
  u64 count = 0;
  u64 j = 0;
};
LevelMax level_set_max(const LevelCounts& counts);

// (1/d) sum_l |S_l|^2 and the exact sum_j c_j^2.
double mean_square_over_powers(const SumsTable& sums);
u64 sum_of_squared_counts(const LevelCounts& counts);

}  // namespace charsum
