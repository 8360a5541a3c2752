#pragma once

// Fitch-Meacham instances: r+2 rows over r characters with r states each,
// compatible on every r-1 characters but not on all r.
//
// Rows are the two end cliques (all 0, all 1) and one tower per character
// j, carrying 0 in character j, 1 in character j+1 (mod r), and in every
// other character a state used by that tower alone.

#include <cstddef>
#include <string>
#include <vector>

#include "phylo3/error.hpp"
#include "phylo3/matrix.hpp"

namespace phylo3 {

struct FMInstance {
  std::size_t r = 0;
  CharacterMatrix matrix;
  std::vector<std::string> cliques;  // per row: EC1, EC2, TC1..TCr
};

inline FMInstance generate_fm(std::size_t r) {
  if (r < 2) throw error(errc::bad_r, "r must be at least 2, got " + std::to_string(r));
  std::vector<std::vector<int>> rows{std::vector<int>(r, 0), std::vector<int>(r, 1)};
  std::vector<std::string> cliques{"EC1", "EC2"};
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<int> row(r);
    for (std::size_t c = 0; c < r; ++c) {
      if (c == j) row[c] = 0;
      else if (c == (j + 1) % r) row[c] = 1;
      else {
        // rank of tower j among the towers that use an internal state of c
        int rank = 0;
        for (std::size_t t = 0; t < j; ++t)
          if (t != c && t != (c + r - 1) % r) ++rank;
        row[c] = 2 + rank;
      }
    }
    rows.push_back(std::move(row));
    cliques.push_back("TC" + std::to_string(j + 1));
  }
  return {r, CharacterMatrix::from_rows(rows), std::move(cliques)};
}

}  // namespace phylo3
