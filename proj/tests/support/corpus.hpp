#pragma once

// Random matrices and brute-force reference answers for the test suites.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "phylo3/phylo3.hpp"

namespace phylo3::corpus {

using Rows = std::vector<std::vector<int>>;

inline Rows random_rows(std::mt19937& rng, std::size_t n, std::size_t m, int states) {
  std::uniform_int_distribution<int> pick(0, states - 1);
  Rows rows(n, std::vector<int>(m));
  for (auto& r : rows)
    for (auto& x : r) x = pick(rng);
  return rows;
}

// Rows read off a random tree in which every state of every character
// arises on exactly one edge, so the result always has a perfect phylogeny.
inline Rows simulated_rows(std::mt19937& rng, std::size_t n, std::size_t m, int states) {
  const std::size_t nodes = n + 3;
  std::vector<std::size_t> parent(nodes, 0);
  for (std::size_t v = 1; v < nodes; ++v) parent[v] = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
  std::vector<std::vector<int>> label(nodes, std::vector<int>(m, 0));
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<int> born(nodes, -1);  // state created on the edge into v
    for (int s = 1; s < states; ++s) born[std::uniform_int_distribution<std::size_t>(1, nodes - 1)(rng)] = s;
    for (std::size_t v = 1; v < nodes; ++v) label[v][c] = born[v] >= 0 ? born[v] : label[parent[v]][c];
  }
  Rows rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(label[std::uniform_int_distribution<std::size_t>(0, nodes - 1)(rng)]);
  return rows;
}

// A simulated matrix with one cell changed: mostly near misses.
inline Rows perturbed_rows(std::mt19937& rng, std::size_t n, std::size_t m, int states) {
  Rows rows = simulated_rows(rng, n, m, states);
  const std::size_t r = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  const std::size_t c = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
  rows[r][c] = std::uniform_int_distribution<int>(0, states - 1)(rng);
  return rows;
}

/// Mixed corpus cycling through uniform random, simulated and perturbed
/// simulated matrices, n <= 6, m <= 5, r <= 3.
inline std::vector<CharacterMatrix> mixed_corpus(std::uint32_t seed, std::size_t count) {
  std::mt19937 rng(seed);
  std::vector<CharacterMatrix> out;
  while (out.size() < count) {
    const std::size_t kind = out.size() % 3;
    // tiny matrices are almost always compatible
    const std::size_t n = std::uniform_int_distribution<std::size_t>(kind == 1 ? 1 : 4, 6)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(kind == 1 ? 1 : 3, 5)(rng);
    const int r = std::uniform_int_distribution<int>(2, 3)(rng);
    Rows rows = kind == 0 ? random_rows(rng, n, m, r) : kind == 1 ? simulated_rows(rng, n, m, r)
                                                                 : perturbed_rows(rng, n, m, r);
    out.push_back(CharacterMatrix::from_rows(rows));
  }
  return out;
}

/// True iff some vertex subset of size >= 4 induces a connected 2-regular
/// subgraph. Only for graphs of a dozen vertices or fewer.
inline bool brute_has_hole(const ColoredGraph& g) {
  const std::size_t n = g.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::size_t> vs;
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1) vs.push_back(v);
    if (vs.size() < 4) continue;
    // an induced cycle: connected, every vertex has exactly two neighbors inside
    bool two_regular = true;
    for (std::size_t v : vs) {
      std::size_t d = 0;
      for (std::size_t w : vs) d += g.adjacent(v, w);
      if (d != 2) {
        two_regular = false;
        break;
      }
    }
    if (!two_regular) continue;
    std::vector<bool> in(n, false), seen(n, false);
    for (std::size_t v : vs) in[v] = true;
    std::vector<std::size_t> stack{vs[0]};
    seen[vs[0]] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y : g.neighbors(x))
        if (in[y] && !seen[y]) {
          seen[y] = true;
          ++reached;
          stack.push_back(y);
        }
    }
    if (reached == vs.size()) return true;
  }
  return false;
}

/// Smallest hitting set by trying all subsets in order of size, then
/// lexicographically.
inline std::optional<std::vector<std::size_t>> brute_hitting_set(std::size_t ground,
                                                                 const std::vector<std::vector<std::size_t>>& members,
                                                                 std::size_t k) {
  for (std::size_t size = 0; size <= std::min(k, ground); ++size) {
    std::vector<bool> pick(ground, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    std::optional<std::vector<std::size_t>> best;
    do {
      std::vector<std::size_t> set;
      for (std::size_t x = 0; x < ground; ++x)
        if (pick[x]) set.push_back(x);
      const bool hits = std::all_of(members.begin(), members.end(), [&](const auto& s) {
        return std::any_of(s.begin(), s.end(), [&](std::size_t x) { return pick[x]; });
      });
      if (hits && (!best || set < *best)) best = set;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (best) return best;
  }
  return std::nullopt;
}

/// Fewest characters whose deletion makes the oracle accept.
inline std::optional<std::size_t> brute_removal_size(const CharacterMatrix& m, std::size_t k) {
  const std::size_t chars = m.characters();
  for (std::size_t size = 0; size <= std::min(k, chars); ++size) {
    std::vector<bool> pick(chars, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      std::vector<std::size_t> keep;
      for (std::size_t c = 0; c < chars; ++c)
        if (!pick[c]) keep.push_back(c);
      if (keep.empty() || brute_pp(restrict(m, CharacterSubset(keep)))) return size;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return std::nullopt;
}

/// Places copies of the given matrices side by side on disjoint character
/// blocks; each block's rows are padded with state 0 elsewhere.
inline CharacterMatrix block_diagonal(const std::vector<Rows>& blocks) {
  std::size_t width = 0;
  for (const auto& b : blocks) width += b.front().size();
  Rows rows;
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (const auto& r : b) {
      std::vector<int> row(width, 0);
      std::copy(r.begin(), r.end(), row.begin() + static_cast<std::ptrdiff_t>(offset));
      rows.push_back(std::move(row));
    }
    offset += b.front().size();
  }
  return CharacterMatrix::from_rows(rows);
}

}  // namespace phylo3::corpus
