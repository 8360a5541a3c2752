#pragma once

// Exhaustive proper-triangulation search. A matrix admits a perfect
// phylogeny iff its partition intersection graph has a chordal supergraph
// using only edges between different characters. Every chordless cycle
// needs one of its legal chords, so branching over those chords on the
// shortest cycle is complete. Works for any number of states.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <list>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "phylo3/chordal.hpp"
#include "phylo3/error.hpp"
#include "phylo3/graph.hpp"
#include "phylo3/matrix.hpp"

namespace phylo3 {

struct OracleOptions {
  std::size_t max_vertices = 25;
  std::size_t node_budget = 5'000'000;  // search nodes before giving up
  std::size_t memo_capacity = 1 << 18;  // failed fill sets remembered
};

struct OracleResult {
  bool compatible = false;
  std::optional<ColoredGraph> triangulation;  // present when compatible
  std::size_t nodes = 0;
};

namespace detail {

using FillKey = std::vector<std::uint64_t>;

struct FillKeyHash {
  std::size_t operator()(const FillKey& k) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t w : k) h = (h ^ w) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

// Least-recently-used set of fill-edge sets known to lead nowhere.
class FailedFills {
 public:
  explicit FailedFills(std::size_t capacity) : capacity_(capacity) {}

  bool contains(const FillKey& k) {
    auto it = index_.find(k);
    if (it == index_.end()) return false;
    order_.splice(order_.begin(), order_, it->second);
    return true;
  }

  void insert(const FillKey& k) {
    if (capacity_ == 0 || contains(k)) return;
    order_.push_front(k);
    index_.emplace(k, order_.begin());
    if (order_.size() > capacity_) {
      index_.erase(order_.back());
      order_.pop_back();
    }
  }

 private:
  std::size_t capacity_;
  std::list<FillKey> order_;
  std::unordered_map<FillKey, std::list<FillKey>::iterator, FillKeyHash> index_;
};

// A graph restricted to two colors must stay a forest in any proper
// triangulation (it is chordal and triangle-free).
inline bool has_two_color_cycle(const ColoredGraph& g) {
  std::size_t colors = 0;
  for (std::size_t v = 0; v < g.size(); ++v) colors = std::max(colors, g.color(v) + 1);
  std::vector<std::size_t> parent(g.size());
  for (std::size_t a = 0; a < colors; ++a)
    for (std::size_t b = a + 1; b < colors; ++b) {
      std::iota(parent.begin(), parent.end(), std::size_t{0});
      auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (auto [u, v] : g.edges()) {
        const std::size_t cu = g.color(u), cv = g.color(v);
        if (!((cu == a && cv == b) || (cu == b && cv == a))) continue;
        const std::size_t ru = find(u), rv = find(v);
        if (ru == rv) return true;
        parent[ru] = rv;
      }
    }
  return false;
}

class TriangulationSearch {
 public:
  TriangulationSearch(const ColoredGraph& g, const OracleOptions& opts) : opts_(opts), memo_(opts.memo_capacity) {
    const std::size_t n = g.size();
    slot_.assign(n * n, 0);
    std::size_t next = 0;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (g.color(u) != g.color(v) && !g.adjacent(u, v)) slot_[u * n + v] = ++next;
    words_ = (next + 63) / 64 + 1;
  }

  std::optional<ColoredGraph> run(ColoredGraph g) {
    FillKey key(words_, 0);
    return search(std::move(g), key);
  }

  std::size_t nodes() const noexcept { return nodes_; }

 private:
  std::optional<ColoredGraph> search(ColoredGraph g, FillKey& key) {
    if (++nodes_ > opts_.node_budget)
      throw error(errc::too_large, "search budget of " + std::to_string(opts_.node_budget) + " nodes exhausted");
    if (has_two_color_cycle(g)) return std::nullopt;
    const auto cycle = find_chordless_cycle(g);
    if (!cycle) return g;

    const auto& vs = cycle->vertices;
    std::vector<Edge> chords;
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 2; j < vs.size(); ++j) {
        if (i == 0 && j + 1 == vs.size()) continue;
        const std::size_t u = std::min(vs[i], vs[j]), v = std::max(vs[i], vs[j]);
        if (g.color(u) != g.color(v)) chords.emplace_back(u, v);
      }
    std::sort(chords.begin(), chords.end());
    for (auto [u, v] : chords) {
      const std::size_t s = slot_[u * g.size() + v];
      key[s / 64] |= std::uint64_t{1} << (s % 64);
      if (!memo_.contains(key)) {
        ColoredGraph next = g;
        next.add_edge(u, v, EdgeTag::f);
        if (auto found = search(std::move(next), key)) return found;
        memo_.insert(key);
      }
      key[s / 64] &= ~(std::uint64_t{1} << (s % 64));
    }
    return std::nullopt;
  }

  const OracleOptions& opts_;
  FailedFills memo_;
  std::vector<std::size_t> slot_;
  std::size_t words_ = 1;
  std::size_t nodes_ = 0;
};

}  // namespace detail

/// Searches for a proper triangulation of the matrix's partition
/// intersection graph. Throws TooLarge rather than guessing.
inline OracleResult oracle_search(const CharacterMatrix& matrix, const OracleOptions& opts = {}) {
  if (matrix.taxa() == 0 || matrix.characters() == 0) throw error(errc::empty_input, "empty matrix");
  ColoredGraph g = build(matrix);
  if (g.size() > opts.max_vertices)
    throw error(errc::too_large, std::to_string(g.size()) + " vertices exceeds " + std::to_string(opts.max_vertices));
  detail::TriangulationSearch search(g, opts);
  OracleResult out;
  out.triangulation = search.run(std::move(g));
  out.compatible = out.triangulation.has_value();
  out.nodes = search.nodes();
  return out;
}

inline bool brute_pp(const CharacterMatrix& matrix, const OracleOptions& opts = {}) {
  return oracle_search(matrix, opts).compatible;
}

}  // namespace phylo3
