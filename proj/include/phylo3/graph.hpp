#pragma once

// Partition intersection graphs: one vertex per (character, state), colored
// by character, with an edge between two states whenever some row carries
// both. Fill edges added later are tagged separately from row edges.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phylo3/error.hpp"
#include "phylo3/matrix.hpp"

namespace phylo3 {

struct VertexId {
  std::size_t character = 0;
  state_t state = 0;

  friend bool operator==(const VertexId&, const VertexId&) = default;
  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

inline std::string to_string(const VertexId& v) {
  return "c" + std::to_string(v.character) + "_s" + std::to_string(v.state);
}

/// E: witnessed by a row. F: forced chord from a character triple.
/// FPrime: chord of a four-colored chordless E-cycle.
enum class EdgeTag : std::uint8_t { none, e, f, f_prime };

inline const char* to_string(EdgeTag t) {
  switch (t) {
    case EdgeTag::e: return "E";
    case EdgeTag::f: return "F";
    case EdgeTag::f_prime: return "F'";
    case EdgeTag::none: break;
  }
  return "none";
}

using Edge = std::pair<std::size_t, std::size_t>;

class ColoredGraph {
 public:
  ColoredGraph() = default;

  /// Vertices are kept in (character, state) order; duplicates are dropped.
  explicit ColoredGraph(std::vector<VertexId> vertices) : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    const std::size_t n = vertices_.size();
    tags_.assign(n * n, EdgeTag::none);
    adj_.assign(n, {});
  }

  std::size_t size() const noexcept { return vertices_.size(); }
  const VertexId& vertex(std::size_t v) const { return vertices_[v]; }
  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
  std::size_t color(std::size_t v) const { return vertices_[v].character; }

  std::optional<std::size_t> find(const VertexId& id) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id);
    if (it == vertices_.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
  }

  std::size_t index_of(const VertexId& id) const {
    auto v = find(id);
    if (!v) throw error(errc::index_out_of_range, "no vertex " + to_string(id));
    return *v;
  }

  EdgeTag tag(std::size_t u, std::size_t v) const { return tags_[u * size() + v]; }
  bool adjacent(std::size_t u, std::size_t v) const { return tag(u, v) != EdgeTag::none; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }
  std::size_t degree(std::size_t v) const { return adj_[v].size(); }

  /// Sorted row indices witnessing an E-edge; empty for fill edges.
  const std::vector<std::size_t>& witnesses(std::size_t u, std::size_t v) const {
    static const std::vector<std::size_t> none;
    auto it = witnesses_.find(key(u, v));
    return it == witnesses_.end() ? none : it->second;
  }

  void add_edge(std::size_t u, std::size_t v, EdgeTag t, std::vector<std::size_t> rows = {}) {
    if (u >= size() || v >= size()) throw error(errc::index_out_of_range, "edge endpoint");
    if (u == v || color(u) == color(v))
      throw error(errc::monochromatic_edge, to_string(vertex(u)) + " -- " + to_string(vertex(v)));
    if (adjacent(u, v))
      throw error(errc::duplicate_edge, to_string(vertex(u)) + " -- " + to_string(vertex(v)));
    tags_[u * size() + v] = t;
    tags_[v * size() + u] = t;
    adj_[u].insert(std::upper_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::upper_bound(adj_[v].begin(), adj_[v].end(), u), u);
    if (!rows.empty()) {
      std::sort(rows.begin(), rows.end());
      witnesses_[key(u, v)] = std::move(rows);
    }
    ++edge_count_;
  }

  std::size_t edge_count() const noexcept { return edge_count_; }

  /// All edges (u < v) in lexicographic order, optionally filtered by tag.
  std::vector<Edge> edges(std::optional<EdgeTag> only = std::nullopt) const {
    std::vector<Edge> out;
    for (std::size_t u = 0; u < size(); ++u)
      for (std::size_t v : adj_[u])
        if (u < v && (!only || tag(u, v) == *only)) out.emplace_back(u, v);
    return out;
  }

  /// True iff no edge joins two vertices of the same color.
  bool is_proper() const {
    for (std::size_t u = 0; u < size(); ++u)
      for (std::size_t v : adj_[u])
        if (color(u) == color(v)) return false;
    return true;
  }

  std::string to_dot() const {
    static constexpr std::array<const char*, 10> palette = {
        "red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan", "gold", "gray40"};
    std::string out = "graph G {\n";
    for (const auto& v : vertices_)
      out += "  " + to_string(v) + " [color=\"" + palette[v.character % palette.size()] + "\"];\n";
    for (auto [u, v] : edges()) {
      const char* style = tag(u, v) == EdgeTag::e ? "solid" : tag(u, v) == EdgeTag::f ? "dashed" : "dotted";
      out += "  " + to_string(vertex(u)) + " -- " + to_string(vertex(v)) + " [style=" + style + "];\n";
    }
    out += "}\n";
    return out;
  }

  friend bool operator==(const ColoredGraph& a, const ColoredGraph& b) {
    return a.vertices_ == b.vertices_ && a.tags_ == b.tags_ && a.witnesses_ == b.witnesses_;
  }

 private:
  static Edge key(std::size_t u, std::size_t v) { return u < v ? Edge{u, v} : Edge{v, u}; }

  std::vector<VertexId> vertices_;
  std::vector<EdgeTag> tags_;
  std::vector<std::vector<std::size_t>> adj_;
  std::map<Edge, std::vector<std::size_t>> witnesses_;
  std::size_t edge_count_ = 0;
};

/// Partition intersection graph of `matrix` restricted to `subset`. Vertex
/// characters are the original column indices; witnesses are row indices.
inline ColoredGraph build(const CharacterMatrix& matrix, const CharacterSubset& subset) {
  subset.validate(matrix.characters());
  std::vector<VertexId> verts;
  for (std::size_t c : subset)
    for (state_t s = 0; s < matrix.state_count(c); ++s) verts.push_back({c, s});
  ColoredGraph g(std::move(verts));

  std::vector<std::size_t> offset;
  {
    std::size_t acc = 0;
    for (std::size_t c : subset) {
      offset.push_back(acc);
      acc += static_cast<std::size_t>(matrix.state_count(c));
    }
  }

  std::map<Edge, std::vector<std::size_t>> rows_of;
  const std::size_t k = subset.size();
  std::vector<std::size_t> ids(k);
  for (std::size_t r = 0; r < matrix.taxa(); ++r) {
    for (std::size_t i = 0; i < k; ++i) ids[i] = offset[i] + static_cast<std::size_t>(matrix.state(r, subset[i]));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) rows_of[{ids[i], ids[j]}].push_back(r);
  }
  for (auto& [e, rows] : rows_of) g.add_edge(e.first, e.second, EdgeTag::e, std::move(rows));
  return g;
}

inline ColoredGraph build(const CharacterMatrix& matrix) {
  return build(matrix, CharacterSubset::all(matrix.characters()));
}

/// Returns `graph` plus the fill edge (u, v). Row edges are never touched.
inline ColoredGraph add_fill_edge(ColoredGraph graph, const VertexId& u, const VertexId& v, EdgeTag tag) {
  if (tag != EdgeTag::f && tag != EdgeTag::f_prime)
    throw error(errc::size_mismatch, "fill edges must be tagged F or F'");
  if (u.character == v.character) throw error(errc::monochromatic_edge, to_string(u) + " -- " + to_string(v));
  graph.add_edge(graph.index_of(u), graph.index_of(v), tag);
  return graph;
}

}  // namespace phylo3
