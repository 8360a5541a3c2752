#pragma once

// Perfect phylogenies from proper triangulations: the maximal cliques of a
// chordal, properly colored partition intersection graph arranged in a
// clique tree give the tree; each clique names the states of its node.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phylo3/chordal.hpp"
#include "phylo3/error.hpp"
#include "phylo3/graph.hpp"
#include "phylo3/matrix.hpp"

namespace phylo3 {

struct PhyloTree {
  struct Node {
    std::vector<state_t> species;     // one state per character
    std::optional<std::size_t> row;   // input row this leaf stands for
  };

  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::vector<std::size_t> leaf_of_row;  // row index -> node index

  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(nodes.size());
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
  }

  std::size_t leaf_count() const {
    const auto adj = adjacency();
    return static_cast<std::size_t>(
        std::count_if(adj.begin(), adj.end(), [](const auto& a) { return a.size() <= 1; }));
  }

  /// Newick rooted at node 0. Leaves carry the row label (or r<index>),
  /// internal nodes their species string.
  std::string to_newick(const CharacterMatrix& matrix) const {
    if (nodes.empty()) return ";";
    const auto adj = adjacency();
    std::string out;
    write_newick(out, 0, nodes.size(), adj, matrix);
    out += ';';
    return out;
  }

  std::string to_dot(const CharacterMatrix& matrix) const {
    std::string out = "graph T {\n";
    for (std::size_t i = 0; i < nodes.size(); ++i)
      out += "  n" + std::to_string(i) + " [label=\"" + label(i, matrix) + "\"];\n";
    for (auto [a, b] : edges) out += "  n" + std::to_string(a) + " -- n" + std::to_string(b) + ";\n";
    out += "}\n";
    return out;
  }

  std::string species_string(std::size_t node) const {
    const auto& sp = nodes[node].species;
    const bool digits = std::all_of(sp.begin(), sp.end(), [](state_t s) { return s >= 0 && s < 10; });
    std::string out;
    for (std::size_t c = 0; c < sp.size(); ++c) {
      if (!digits && c) out += '.';
      out += std::to_string(sp[c]);
    }
    return out;
  }

  std::string label(std::size_t node, const CharacterMatrix& matrix) const {
    if (auto r = nodes[node].row) {
      if (*r < matrix.row_labels().size()) return matrix.row_labels()[*r];
      return "r" + std::to_string(*r);
    }
    return species_string(node);
  }

 private:
  static std::string quote(const std::string& s) {
    if (s.find_first_of("()[]':;, \t") == std::string::npos) return s;
    std::string out = "'";
    for (char ch : s) {
      if (ch == '\'') out += '\'';
      out += ch;
    }
    return out + "'";
  }

  void write_newick(std::string& out, std::size_t v, std::size_t from, const std::vector<std::vector<std::size_t>>& adj,
                    const CharacterMatrix& matrix) const {
    std::vector<std::size_t> kids;
    for (std::size_t w : adj[v])
      if (w != from) kids.push_back(w);
    if (!kids.empty()) {
      out += '(';
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) out += ',';
        write_newick(out, kids[i], v, adj, matrix);
      }
      out += ')';
    }
    out += quote(label(v, matrix));
  }
};

/// Result of checking a candidate tree; converts to true when valid.
struct TreeCheck {
  std::vector<std::string> violations;
  explicit operator bool() const noexcept { return violations.empty(); }
};

/// Checks the three perfect phylogeny conditions: every row labels its own
/// leaf, every node carries a full species, and every character state
/// occupies a connected part of the tree.
inline TreeCheck verify_tree(const PhyloTree& t, const CharacterMatrix& matrix) {
  TreeCheck check;
  const std::size_t n = t.nodes.size();
  const std::size_t m = matrix.characters();
  if (n == 0) {
    check.violations.push_back("tree has no nodes");
    return check;
  }
  for (auto [a, b] : t.edges)
    if (a >= n || b >= n || a == b) {
      check.violations.push_back("edge endpoint out of range");
      return check;
    }
  const auto adj = t.adjacency();

  auto connected = [&](const std::vector<bool>& keep) {
    std::size_t first = n, total = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (keep[i]) {
        ++total;
        if (first == n) first = i;
      }
    if (total == 0) return true;
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue{first};
    seen[first] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t y : adj[x])
        if (keep[y] && !seen[y]) {
          seen[y] = true;
          ++reached;
          queue.push_back(y);
        }
    }
    return reached == total;
  };

  if (t.edges.size() + 1 != n || !connected(std::vector<bool>(n, true)))
    check.violations.push_back("not a tree: " + std::to_string(n) + " nodes, " + std::to_string(t.edges.size()) +
                               " edges");

  // condition 1
  if (t.leaf_of_row.size() != matrix.taxa()) {
    check.violations.push_back("condition 1: " + std::to_string(t.leaf_of_row.size()) + " leaves mapped for " +
                               std::to_string(matrix.taxa()) + " rows");
  } else {
    std::vector<bool> used(n, false);
    for (std::size_t r = 0; r < matrix.taxa(); ++r) {
      const std::size_t leaf = t.leaf_of_row[r];
      const std::string where = "condition 1: row " + std::to_string(r);
      if (leaf >= n) {
        check.violations.push_back(where + " maps outside the tree");
        continue;
      }
      if (adj[leaf].size() > 1) check.violations.push_back(where + " maps to an internal node");
      if (used[leaf]) check.violations.push_back(where + " shares its leaf with another row");
      used[leaf] = true;
      const auto row = matrix.row(r);
      if (!std::equal(row.begin(), row.end(), t.nodes[leaf].species.begin(), t.nodes[leaf].species.end()))
        check.violations.push_back(where + " label differs from its leaf");
    }
  }

  // condition 2
  bool labels_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& sp = t.nodes[i].species;
    bool ok = sp.size() == m;
    for (std::size_t c = 0; ok && c < m; ++c) ok = sp[c] >= 0 && sp[c] < matrix.state_count(c);
    if (!ok) {
      labels_ok = false;
      check.violations.push_back("condition 2: node " + std::to_string(i) + " is not a complete species");
    }
  }

  // condition 3
  if (labels_ok)
    for (std::size_t c = 0; c < m; ++c)
      for (state_t s = 0; s < matrix.state_count(c); ++s) {
        std::vector<bool> keep(n);
        for (std::size_t i = 0; i < n; ++i) keep[i] = t.nodes[i].species[c] == s;
        if (!connected(keep))
          check.violations.push_back("condition 3: state " + std::to_string(s) + " of character " +
                                     std::to_string(c) + " is not connected");
      }
  return check;
}

/// Builds a perfect phylogeny from a chordal proper supergraph of the
/// matrix's partition intersection graph.
inline PhyloTree build_tree(const ColoredGraph& g, const CharacterMatrix& matrix) {
  if (!is_chordal(g)) throw error(errc::not_chordal, "triangulation is not chordal");
  if (!g.is_proper()) throw error(errc::not_proper, "triangulation has a monochromatic edge");
  const std::size_t n = matrix.taxa();
  const std::size_t m = matrix.characters();
  if (n == 0) throw error(errc::empty_input, "no rows");

  std::vector<std::vector<std::size_t>> row_vertices(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < m; ++c) row_vertices[r].push_back(g.index_of({c, matrix.state(r, c)}));
  for (auto& rv : row_vertices) std::sort(rv.begin(), rv.end());

  // Maximal cliques: each vertex with its earlier-visited MCS neighbors.
  const auto order = mcs_order(g);
  std::vector<std::size_t> pos(g.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  std::vector<std::vector<std::size_t>> candidates;
  for (std::size_t v = 0; v < g.size(); ++v) {
    std::vector<std::size_t> clique{v};
    for (std::size_t w : g.neighbors(v))
      if (pos[w] < pos[v]) clique.push_back(w);
    std::sort(clique.begin(), clique.end());
    candidates.push_back(std::move(clique));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<std::vector<std::size_t>> cliques;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < candidates.size() && maximal; ++j)
      if (i != j && candidates[j].size() > candidates[i].size() &&
          std::includes(candidates[j].begin(), candidates[j].end(), candidates[i].begin(), candidates[i].end()))
        maximal = false;
    if (maximal) cliques.push_back(candidates[i]);
  }
  const std::size_t k = cliques.size();

  auto covering_clique = [&](std::size_t r) -> std::size_t {
    for (std::size_t q = 0; q < k; ++q)
      if (std::includes(cliques[q].begin(), cliques[q].end(), row_vertices[r].begin(), row_vertices[r].end()))
        return q;
    throw error(errc::row_clique_uncovered, "row " + std::to_string(r) + " lies in no maximal clique");
  };
  std::vector<std::size_t> home(n);
  for (std::size_t r = 0; r < n; ++r) home[r] = covering_clique(r);
  const std::size_t root = home[0];

  // Maximum-weight spanning tree over clique intersections (Prim from root).
  auto overlap = [&](std::size_t a, std::size_t b) {
    std::vector<std::size_t> common;
    std::set_intersection(cliques[a].begin(), cliques[a].end(), cliques[b].begin(), cliques[b].end(),
                          std::back_inserter(common));
    return common.size();
  };
  std::vector<std::size_t> parent(k, k);
  std::vector<bool> in_tree(k, false);
  std::vector<std::size_t> attach_order{root};
  in_tree[root] = true;
  for (std::size_t step = 1; step < k; ++step) {
    std::size_t best_t = k, best_c = k, best_w = 0;
    for (std::size_t t : attach_order)
      for (std::size_t c = 0; c < k; ++c) {
        if (in_tree[c]) continue;
        const std::size_t w = overlap(t, c);
        if (best_c == k || w > best_w) {
          best_t = t;
          best_c = c;
          best_w = w;
        }
      }
    parent[best_c] = best_t;
    in_tree[best_c] = true;
    attach_order.push_back(best_c);
  }

  std::vector<std::vector<std::size_t>> tree_adj(k);
  for (std::size_t c = 0; c < k; ++c)
    if (parent[c] != k) {
      tree_adj[c].push_back(parent[c]);
      tree_adj[parent[c]].push_back(c);
    }

  // Running intersection: cliques holding any vertex form a subtree.
  for (std::size_t x = 0; x < g.size(); ++x) {
    std::size_t holders = 0, links = 0;
    std::vector<bool> holds(k, false);
    for (std::size_t q = 0; q < k; ++q)
      if (std::binary_search(cliques[q].begin(), cliques[q].end(), x)) {
        holds[q] = true;
        ++holders;
      }
    for (std::size_t q = 0; q < k; ++q)
      if (holds[q] && parent[q] != k && holds[parent[q]]) ++links;
    if (holders != links + 1)
      throw error(errc::internal_contradiction, "clique tree violates running intersection at " + to_string(g.vertex(x)));
  }

  // Species: a clique's own states, the rest inherited from the parent.
  std::vector<std::vector<state_t>> species(k, std::vector<state_t>(m, -1));
  for (std::size_t q : attach_order) {
    if (parent[q] != k) species[q] = species[parent[q]];
    for (std::size_t x : cliques[q]) species[q][g.vertex(x).character] = g.vertex(x).state;
    if (std::find(species[q].begin(), species[q].end(), -1) != species[q].end())
      throw error(errc::internal_contradiction, "root clique misses a character");
  }

  // Drop clique leaves that carry no input row.
  std::vector<std::vector<std::size_t>> rows_at(k);
  for (std::size_t r = 0; r < n; ++r) rows_at[home[r]].push_back(r);
  std::vector<bool> alive(k, true);
  std::vector<std::size_t> degree(k);
  for (std::size_t q = 0; q < k; ++q) degree[q] = tree_adj[q].size();
  std::deque<std::size_t> prune;
  for (std::size_t q = 0; q < k; ++q)
    if (degree[q] <= 1 && rows_at[q].empty()) prune.push_back(q);
  while (!prune.empty()) {
    std::size_t q = prune.front();
    prune.pop_front();
    if (!alive[q] || degree[q] > 1 || !rows_at[q].empty()) continue;
    alive[q] = false;
    for (std::size_t w : tree_adj[q])
      if (alive[w] && --degree[w] <= 1 && rows_at[w].empty()) prune.push_back(w);
  }

  PhyloTree tree;
  std::vector<std::size_t> node_of(k, k);
  std::vector<std::size_t> survivors;
  for (std::size_t q : attach_order)
    if (alive[q]) survivors.push_back(q);
  for (std::size_t q : survivors) {
    node_of[q] = tree.nodes.size();
    tree.nodes.push_back({species[q], std::nullopt});
  }
  for (std::size_t q : survivors)
    if (parent[q] != k && alive[parent[q]]) tree.edges.emplace_back(node_of[parent[q]], node_of[q]);

  tree.leaf_of_row.assign(n, 0);
  for (std::size_t q : survivors) {
    const auto& rows = rows_at[q];
    if (rows.size() == 1 && degree[q] <= 1) {
      // The clique itself is a leaf labeled exactly by its only row.
      tree.nodes[node_of[q]].row = rows.front();
      tree.leaf_of_row[rows.front()] = node_of[q];
      continue;
    }
    for (std::size_t r : rows) {
      const auto row = matrix.row(r);
      tree.leaf_of_row[r] = tree.nodes.size();
      tree.nodes.push_back({std::vector<state_t>(row.begin(), row.end()), r});
      tree.edges.emplace_back(node_of[q], tree.leaf_of_row[r]);
    }
  }
  std::sort(tree.edges.begin(), tree.edges.end());
  return tree;
}

}  // namespace phylo3
