#pragma once

// The minimal three-character obstructions for three-state data, in
// canonical form. Every row-minimal incompatible matrix on three characters
// whose pairs are all compatible relabels to exactly one of these.

#include <vector>

#include "phylo3/classify.hpp"

namespace phylo3 {

struct CatalogEntry {
  PatternKind kind;
  std::vector<std::vector<state_t>> rows;
};

inline const std::vector<CatalogEntry>& triple_obstructions() {
  static const std::vector<CatalogEntry> entries{
      {PatternKind::five_cycle_case_i, {{0, 0, 0}, {0, 0, 1}, {1, 1, 0}, {1, 2, 2}, {2, 2, 1}}},
      {PatternKind::five_cycle_case_ii, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 2, 2}, {2, 1, 2}}},
      {PatternKind::five_cycle_case_iii, {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 1, 2}, {1, 2, 1}}},
      {PatternKind::four_cycle_forced, {{0, 0, 0}, {0, 1, 1}, {1, 0, 2}, {1, 2, 1}, {2, 1, 2}}},
  };
  return entries;
}

}  // namespace phylo3
