#pragma once

// Whole-matrix decision for characters with at most three states: every
// pair and triple is tested, the forced chords of all triples are merged
// into the partition intersection graph, chords of four-colored chordless
// row cycles are added, and the result is chordal exactly when a perfect
// phylogeny exists.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "phylo3/chordal.hpp"
#include "phylo3/classify.hpp"
#include "phylo3/error.hpp"
#include "phylo3/graph.hpp"
#include "phylo3/matrix.hpp"
#include "phylo3/parallel.hpp"
#include "phylo3/tree.hpp"
#include "phylo3/triple.hpp"

namespace phylo3 {

struct FullTestOptions {
  unsigned threads = 1;  // 0 = hardware concurrency
};

struct TreeVerdict {
  PhyloTree tree;
  ColoredGraph triangulation;  // row edges plus F and F' fill
  std::vector<VertexPair> f_edges;
  std::vector<VertexPair> f_prime_edges;
};

struct WitnessVerdict {
  CharacterSubset characters;
  ObstructionPattern pattern;
  Incompatibility detail;
};

struct Verdict {
  std::variant<TreeVerdict, WitnessVerdict> value;

  bool is_tree() const noexcept { return std::holds_alternative<TreeVerdict>(value); }
  const TreeVerdict& tree() const { return std::get<TreeVerdict>(value); }
  const WitnessVerdict& witness() const { return std::get<WitnessVerdict>(value); }
};

/// Observations collected while deciding; `violations` lists every
/// structural property of the fill process that failed to hold.
struct FullTestTrace {
  std::size_t pairs_tested = 0;
  std::size_t triples_tested = 0;
  std::vector<std::vector<VertexId>> f_prime_cycles;
  std::vector<std::string> violations;
};

namespace detail {

// Characters with more than one state; single-state columns never conflict.
inline std::vector<std::size_t> informative_characters(const CharacterMatrix& m) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < m.characters(); ++c)
    if (m.state_count(c) > 1) out.push_back(c);
  return out;
}

inline std::vector<std::pair<std::size_t, std::size_t>> pairs_of(const std::vector<std::size_t>& chars) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < chars.size(); ++a)
    for (std::size_t b = a + 1; b < chars.size(); ++b) out.emplace_back(chars[a], chars[b]);
  return out;
}

inline std::vector<std::array<std::size_t, 3>> triples_of(const std::vector<std::size_t>& chars) {
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t a = 0; a < chars.size(); ++a)
    for (std::size_t b = a + 1; b < chars.size(); ++b)
      for (std::size_t c = b + 1; c < chars.size(); ++c) out.push_back({chars[a], chars[b], chars[c]});
  return out;
}

inline std::string describe(const std::vector<VertexId>& cycle) {
  std::string out;
  for (const auto& v : cycle) out += (out.empty() ? "" : " ") + to_string(v);
  return out;
}

// Properties every cycle met while triangulating a compatible triple has.
inline void check_compatible_triple(const TripleOutcome& t, const CharacterSubset& chars,
                                    std::vector<std::string>& violations) {
  for (const auto& cycle : t.cycles_seen) {
    std::map<std::size_t, std::size_t> uses;
    for (const auto& v : cycle) ++uses[v.character];
    const std::string where = "triple {" + std::to_string(chars[0]) + "," + std::to_string(chars[1]) + "," +
                              std::to_string(chars[2]) + "} cycle " + describe(cycle);
    bool once = false;
    for (auto [c, k] : uses) {
      if (k >= 3) violations.push_back(where + ": three states of one character");
      once = once || k == 1;
    }
    if (!once) violations.push_back(where + ": no color appears once");
    if (cycle.size() >= 5) violations.push_back(where + ": length " + std::to_string(cycle.size()));
  }
}

inline WitnessVerdict make_witness(const CharacterMatrix& matrix, Incompatibility detail) {
  return {detail.characters, classify(restrict(matrix, detail.characters)), std::move(detail)};
}

}  // namespace detail

/// Decides whether `matrix` admits a perfect phylogeny and returns either a
/// tree or the lexicographically smallest failing pair (else triple).
inline Verdict full_test(const CharacterMatrix& matrix, const FullTestOptions& options = {},
                         FullTestTrace* trace = nullptr) {
  if (matrix.taxa() == 0 || matrix.characters() == 0) throw error(errc::empty_input, "empty matrix");
  require_state_bound(matrix);
  FullTestTrace local;
  FullTestTrace& tr = trace ? *trace : local;

  const auto chars = detail::informative_characters(matrix);
  const auto pairs = detail::pairs_of(chars);
  tr.pairs_tested += pairs.size();
  if (auto bad = first_failure(pairs.size(), options.threads,
                               [&](std::size_t i) { return !pair_test(matrix, pairs[i].first, pairs[i].second); })) {
    auto conflict = pair_conflict(matrix, pairs[*bad].first, pairs[*bad].second);
    return {detail::make_witness(matrix, std::move(*conflict))};
  }

  const auto triples = detail::triples_of(chars);
  tr.triples_tested += triples.size();
  std::vector<TripleOutcome> outcomes(triples.size());
  if (auto bad = first_failure(triples.size(), options.threads, [&](std::size_t i) {
        const auto& t = triples[i];
        outcomes[i] = triple_test(matrix, t[0], t[1], t[2]);
        return !outcomes[i].compatible();
      })) {
    return {detail::make_witness(matrix, *outcomes[*bad].incompatible)};
  }

  // G'(S): row edges plus every forced chord.
  ColoredGraph g = build(matrix);
  std::set<VertexPair> f_edges;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto& t = triples[i];
    detail::check_compatible_triple(outcomes[i], CharacterSubset{t[0], t[1], t[2]}, tr.violations);
    f_edges.insert(outcomes[i].f_edges.begin(), outcomes[i].f_edges.end());
  }
  for (const auto& [u, v] : f_edges) g.add_edge(g.index_of(u), g.index_of(v), EdgeTag::f);

  // Chordless four-colored 4-cycles of row edges in G'(S) get both chords.
  std::set<VertexPair> f_prime;
  for_each_chordless_cycle(
      g,
      [&](const Cycle& c) {
        const auto& vs = c.vertices;
        for (std::size_t p = 0; p < 4; ++p)
          if (g.tag(vs[p], vs[(p + 1) % 4]) != EdgeTag::e) return true;
        const auto ids = detail::to_ids(g, c);
        std::set<std::size_t> colors;
        for (const auto& v : ids) colors.insert(v.character);
        if (colors.size() != 4) return true;
        tr.f_prime_cycles.push_back(ids);
        f_prime.insert({std::min(ids[0], ids[2]), std::max(ids[0], ids[2])});
        f_prime.insert({std::min(ids[1], ids[3]), std::max(ids[1], ids[3])});
        return true;
      },
      4);
  for (const auto& [u, v] : f_prime) {
    const std::size_t a = g.index_of(u), b = g.index_of(v);
    if (g.color(a) == g.color(b)) tr.violations.push_back("F' chord joins equal colors");
    if (!g.adjacent(a, b)) g.add_edge(a, b, EdgeTag::f_prime);
  }

  if (!g.is_proper()) throw error(errc::internal_contradiction, "filled graph is not proper");
  if (auto hole = find_chordless_cycle(g))
    throw error(errc::internal_contradiction, "filled graph keeps chordless cycle " +
                                                  detail::describe(detail::to_ids(g, *hole)));

  TreeVerdict out{build_tree(g, matrix), g, {f_edges.begin(), f_edges.end()}, {}};
  for (auto [a, b] : g.edges(EdgeTag::f_prime)) out.f_prime_edges.emplace_back(g.vertex(a), g.vertex(b));
  if (auto check = verify_tree(out.tree, matrix); !check)
    throw error(errc::internal_contradiction, "built tree fails verification: " + check.violations.front());
  return {std::move(out)};
}

/// Compatibility through separators: every pair graph is a forest and every
/// two states of one character are split by some minimal separator using
/// each character at most once.
inline bool separator_check(const CharacterMatrix& matrix, std::size_t max_vertices = 15) {
  require_state_bound(matrix);
  const ColoredGraph g = build(matrix);
  if (g.size() > max_vertices)
    throw error(errc::too_large, std::to_string(g.size()) + " vertices exceeds " + std::to_string(max_vertices));
  for (std::size_t i = 0; i < matrix.characters(); ++i)
    for (std::size_t j = i + 1; j < matrix.characters(); ++j)
      if (!pair_test(matrix, i, j)) return false;
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t v = u + 1; v < g.size(); ++v) {
      if (g.color(u) != g.color(v)) continue;
      const auto seps = minimal_separators(g, u, v);
      if (std::none_of(seps.begin(), seps.end(), [&](const Separator& s) { return is_legal_separator(g, s); }))
        return false;
    }
  return true;
}

}  // namespace phylo3
