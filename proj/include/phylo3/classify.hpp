#pragma once

// Classification of minimal obstructions on at most three characters.
//
// Pairs fail only through a two-colored cycle. An incompatible triple whose
// pairs all pass has a largest chordless cycle of length four or five. A
// five-cycle uses one state of some character `a` and two states of each of
// the others; its three edges avoiding `a` form a path e1 e2 e3, and the
// cases are told apart by which of those edges have row witnesses sharing a
// state of `a`.

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <set>
#include <string_view>
#include <vector>

#include "phylo3/chordal.hpp"
#include "phylo3/error.hpp"
#include "phylo3/graph.hpp"
#include "phylo3/matrix.hpp"
#include "phylo3/triple.hpp"

namespace phylo3 {

enum class PatternKind {
  two_color_cycle,
  four_cycle_forced,
  five_cycle_case_i,    // two adjacent edges share a state of a
  five_cycle_case_ii,   // the two end edges share a state of a
  five_cycle_case_iii,  // all three edges share a state of a
  unclassified,
};

inline std::string_view to_string(PatternKind k) {
  switch (k) {
    case PatternKind::two_color_cycle: return "TwoColorCycle";
    case PatternKind::four_cycle_forced: return "FourCycleForced";
    case PatternKind::five_cycle_case_i: return "FiveCycleCaseI";
    case PatternKind::five_cycle_case_ii: return "FiveCycleCaseII";
    case PatternKind::five_cycle_case_iii: return "FiveCycleCaseIII";
    case PatternKind::unclassified: return "Unclassified";
  }
  return "Unknown";
}

struct ObstructionPattern {
  PatternKind kind = PatternKind::unclassified;
  std::vector<std::vector<state_t>> canonical_rows;  // sorted, deduplicated
  std::vector<VertexId> cycle;  // largest chordless cycle of the canonical matrix

  CharacterMatrix canonical_matrix() const { return CharacterMatrix::from_rows(canonical_rows); }
  friend bool operator==(const ObstructionPattern&, const ObstructionPattern&) = default;
};

/// Lexicographically smallest sorted, duplicate-free row set over all
/// character permutations and per-character state permutations.
inline std::vector<std::vector<state_t>> canonical_form(const CharacterMatrix& matrix) {
  const std::size_t m = matrix.characters();
  const auto rows = matrix.rows();

  std::vector<std::vector<std::vector<state_t>>> state_perms(m);
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<state_t> p(static_cast<std::size_t>(matrix.state_count(c)));
    std::iota(p.begin(), p.end(), 0);
    do state_perms[c].push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  }

  std::vector<std::vector<state_t>> best;
  std::vector<std::size_t> char_perm(m);
  std::iota(char_perm.begin(), char_perm.end(), std::size_t{0});
  std::vector<std::size_t> choice(m);
  std::vector<std::vector<state_t>> candidate(rows.size(), std::vector<state_t>(m));
  do {
    std::fill(choice.begin(), choice.end(), 0);
    for (;;) {
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t j = 0; j < m; ++j) {
          const std::size_t src = char_perm[j];
          candidate[r][j] = state_perms[src][choice[src]][static_cast<std::size_t>(rows[r][src])];
        }
      auto sorted = candidate;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      if (best.empty() || sorted < best) best = std::move(sorted);

      std::size_t c = 0;
      while (c < m && ++choice[c] == state_perms[c].size()) choice[c++] = 0;
      if (c == m) break;
    }
  } while (std::next_permutation(char_perm.begin(), char_perm.end()));
  return best;
}

namespace detail {

inline PatternKind five_cycle_case(const ColoredGraph& g, const Cycle& c, const CharacterMatrix& matrix) {
  // find the color used once; rotate so it sits at position 0
  std::array<std::size_t, 8> uses{};
  for (std::size_t v : c.vertices) ++uses[g.color(v)];
  std::size_t start = c.length();
  for (std::size_t p = 0; p < c.length(); ++p)
    if (uses[g.color(c.vertices[p])] == 1) start = p;
  if (start == c.length()) return PatternKind::unclassified;
  const std::size_t a = g.color(c.vertices[start]);

  std::vector<std::set<state_t>> a_states;  // for e1, e2, e3 along the cycle
  for (std::size_t step = 1; step + 1 < c.length(); ++step) {
    const std::size_t x = c.vertices[(start + step) % c.length()];
    const std::size_t y = c.vertices[(start + step + 1) % c.length()];
    std::set<state_t> states;
    for (std::size_t r : g.witnesses(x, y)) states.insert(matrix.state(r, a));
    a_states.push_back(std::move(states));
  }
  auto meet = [](const std::set<state_t>& p, const std::set<state_t>& q) {
    std::set<state_t> out;
    std::set_intersection(p.begin(), p.end(), q.begin(), q.end(), std::inserter(out, out.end()));
    return out;
  };
  if (!meet(meet(a_states[0], a_states[1]), a_states[2]).empty()) return PatternKind::five_cycle_case_iii;
  if (!meet(a_states[0], a_states[2]).empty()) return PatternKind::five_cycle_case_ii;
  if (!meet(a_states[0], a_states[1]).empty() || !meet(a_states[1], a_states[2]).empty())
    return PatternKind::five_cycle_case_i;
  return PatternKind::unclassified;
}

}  // namespace detail

/// Classifies an incompatible matrix on at most three characters.
/// Throws NotAnObstruction when the characters are compatible.
inline ObstructionPattern classify(const CharacterMatrix& witness) {
  const std::size_t m = witness.characters();
  if (m == 0 || m > 3) throw error(errc::size_mismatch, "classify takes one to three characters");
  require_state_bound(witness);

  ObstructionPattern out;
  out.canonical_rows = canonical_form(witness);
  const CharacterMatrix canon = out.canonical_matrix();
  const ColoredGraph g = build(canon);

  auto not_obstruction = [] { return error(errc::not_an_obstruction, "characters are compatible"); };
  if (m == 1) throw not_obstruction();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (auto conflict = pair_conflict(canon, i, j)) {
        out.kind = PatternKind::two_color_cycle;
        out.cycle = conflict->cycle;
        return out;
      }
  if (m == 2 || triple_test(canon, 0, 1, 2).compatible()) throw not_obstruction();

  const auto cycle = largest_chordless_cycle(g);
  if (!cycle) return out;
  out.cycle = detail::to_ids(g, *cycle);
  if (cycle->length() == 4) out.kind = PatternKind::four_cycle_forced;
  else if (cycle->length() == 5) out.kind = detail::five_cycle_case(g, *cycle, canon);
  return out;
}

}  // namespace phylo3
