#pragma once

// Compatibility of two and three characters with at most three states.
//
// A pair is compatible iff its partition intersection graph is a forest.
// For a compatible-by-pairs triple, every chordless cycle of a properly
// triangulatable graph is a 4-cycle whose two once-appearing colors sit
// opposite each other, so the only legal chord between them is forced. The
// fill loop below adds those chords until the graph is chordal or a cycle
// of any other shape shows the triple is incompatible. Each round looks at
// the longest chordless cycle, so a cycle of length five or more is
// reported as such even when shorter ones exist.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "phylo3/chordal.hpp"
#include "phylo3/error.hpp"
#include "phylo3/graph.hpp"
#include "phylo3/matrix.hpp"

namespace phylo3 {

using VertexPair = std::pair<VertexId, VertexId>;

enum class IncompatibilityReason {
  two_color_cycle,
  three_states_on_cycle,
  five_cycle,  // any chordless cycle of length >= 5
  bad_four_cycle,
  nonterminating_fill,
};

inline std::string_view to_string(IncompatibilityReason r) {
  switch (r) {
    case IncompatibilityReason::two_color_cycle: return "TwoColorCycle";
    case IncompatibilityReason::three_states_on_cycle: return "ThreeStatesOnCycle";
    case IncompatibilityReason::five_cycle: return "FiveCycle";
    case IncompatibilityReason::bad_four_cycle: return "BadFourCycle";
    case IncompatibilityReason::nonterminating_fill: return "NonterminatingFill";
  }
  return "Unknown";
}

struct Incompatibility {
  IncompatibilityReason reason;
  CharacterSubset characters;   // the failing pair or triple
  std::vector<VertexId> cycle;  // offending chordless cycle
};

struct TripleOutcome {
  std::vector<VertexPair> f_edges;  // forced chords, each (smaller, larger)
  std::optional<Incompatibility> incompatible;
  std::vector<std::vector<VertexId>> cycles_seen;  // every cycle the fill loop met, in order

  bool compatible() const noexcept { return !incompatible; }
};

namespace detail {

inline std::vector<VertexId> to_ids(const ColoredGraph& g, const Cycle& c) {
  std::vector<VertexId> out;
  for (std::size_t v : c.vertices) out.push_back(g.vertex(v));
  return out;
}

inline void require_pair_bound(const CharacterMatrix& m, std::size_t i, std::size_t j) {
  CharacterSubset({i, j}).validate(m.characters());
  for (std::size_t c : {i, j})
    if (m.state_count(c) > 3)
      throw error(errc::state_bound, "character " + std::to_string(c) + " has " +
                                         std::to_string(m.state_count(c)) + " states");
}

// Forest test on the two-character graph: |E| = |V| - #components.
inline bool is_forest(const ColoredGraph& g) {
  std::vector<std::size_t> parent(g.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : g.edges()) {
    const std::size_t a = find(u), b = find(v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

}  // namespace detail

/// True iff characters i and j admit a perfect phylogeny.
inline bool pair_test(const CharacterMatrix& matrix, std::size_t i, std::size_t j) {
  detail::require_pair_bound(matrix, i, j);
  if (i == j) return true;
  return detail::is_forest(build(matrix, CharacterSubset{i, j}));
}

/// The shortest cycle of an incompatible pair's graph (a two-colored
/// bipartite graph, so its shortest cycle is chordless).
inline std::optional<Incompatibility> pair_conflict(const CharacterMatrix& matrix, std::size_t i, std::size_t j) {
  detail::require_pair_bound(matrix, i, j);
  const ColoredGraph g = build(matrix, CharacterSubset{i, j});
  if (detail::is_forest(g)) return std::nullopt;
  auto cycle = find_chordless_cycle(g);
  if (!cycle) throw error(errc::internal_contradiction, "cyclic pair graph without a chordless cycle");
  return Incompatibility{IncompatibilityReason::two_color_cycle, CharacterSubset{i, j}, detail::to_ids(g, *cycle)};
}

/// Triangulates the three-character graph by forced chords, or reports the
/// first cycle that cannot be handled that way.
inline TripleOutcome triple_test(const CharacterMatrix& matrix, std::size_t i, std::size_t j, std::size_t k) {
  const CharacterSubset chars{i, j, k};
  if (chars.size() != 3) throw error(errc::size_mismatch, "triple_test needs three distinct characters");
  chars.validate(matrix.characters());
  require_state_bound(restrict(matrix, chars));

  TripleOutcome out;
  for (auto [a, b] : {std::pair{chars[0], chars[1]}, std::pair{chars[0], chars[2]}, std::pair{chars[1], chars[2]}}) {
    if (auto conflict = pair_conflict(matrix, a, b)) {
      out.cycles_seen.push_back(conflict->cycle);
      out.incompatible = std::move(conflict);
      return out;
    }
  }

  ColoredGraph g = build(matrix, chars);
  std::size_t legal_non_edges = 0;
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t v = u + 1; v < g.size(); ++v)
      if (g.color(u) != g.color(v) && !g.adjacent(u, v)) ++legal_non_edges;

  for (std::size_t iter = 0;; ++iter) {
    auto cycle = largest_chordless_cycle(g, g.size());
    if (!cycle) break;
    auto ids = detail::to_ids(g, *cycle);
    out.cycles_seen.push_back(ids);
    auto fail = [&](IncompatibilityReason reason) {
      out.incompatible = Incompatibility{reason, chars, ids};
      out.f_edges.clear();
      return out;
    };
    if (iter >= legal_non_edges) return fail(IncompatibilityReason::nonterminating_fill);

    std::map<std::size_t, std::vector<std::size_t>> by_color;  // color -> cycle positions
    for (std::size_t p = 0; p < cycle->length(); ++p) by_color[g.color(cycle->vertices[p])].push_back(p);

    bool three_states = false;
    for (const auto& [color, positions] : by_color)
      if (positions.size() >= 3) three_states = true;
    if (three_states) return fail(IncompatibilityReason::three_states_on_cycle);
    if (cycle->length() >= 5) return fail(IncompatibilityReason::five_cycle);

    std::vector<std::size_t> singles;
    for (const auto& [color, positions] : by_color)
      if (positions.size() == 1) singles.push_back(positions.front());
    if (singles.size() != 2 || (singles[0] + 2) % 4 != singles[1] % 4)
      return fail(IncompatibilityReason::bad_four_cycle);

    const std::size_t u = cycle->vertices[singles[0]], v = cycle->vertices[singles[1]];
    g.add_edge(u, v, EdgeTag::f);
    out.f_edges.emplace_back(std::min(g.vertex(u), g.vertex(v)), std::max(g.vertex(u), g.vertex(v)));
  }
  std::sort(out.f_edges.begin(), out.f_edges.end());
  return out;
}

}  // namespace phylo3
