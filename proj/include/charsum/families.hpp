#pragma once

#include <optional>
#include <vector>

#include "charsum/characters.hpp"

namespace charsum {

struct FamilySpec {
  u64 q_min = 3;
  u64 q_max = 100;
  std::vector<u64> moduli;  // used instead of the range when nonempty
  bool primes_only = false;
  u64 d_min = 2;
  u64 d_max = 0;  // 0: no cap
  bool pow2_only = false;
  bool squarefree_only = false;
  bool primitive_only = true;
  bool one_per_order = true;  // lexicographically first character of each order
};

// Ordered by (q, index).
std::vector<DirichletCharacter> generate_family(const FamilySpec& spec);

// First character of the given order in index order.
std::optional<DirichletCharacter> first_character(const GroupPtr& group, u64 order,
                                                  bool primitive_only);

std::vector<u64> family_moduli(const FamilySpec& spec);

}  // namespace charsum
