#pragma once

// JSON reports. Keys keep insertion order so identical inputs produce
// byte-identical output.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "phylo3/classify.hpp"
#include "phylo3/decide.hpp"
#include "phylo3/fitch_meacham.hpp"
#include "phylo3/hypergraph.hpp"
#include "phylo3/matrix.hpp"
#include "phylo3/oracle.hpp"

namespace phylo3::report {

using json = nlohmann::ordered_json;

/// 64-bit FNV-1a of the raw input, as 16 hex digits.
inline std::string digest(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) h = (h ^ ch) * 1099511628211ull;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline json to_json(const CharacterSubset& s) { return json(s.indices()); }

inline json to_json(const std::vector<VertexId>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(to_string(v));
  return out;
}

inline json to_json(const std::vector<VertexPair>& edges) {
  json out = json::array();
  for (const auto& [u, v] : edges) out.push_back({to_string(u), to_string(v)});
  return out;
}

inline json to_json(const CharacterMatrix& m) {
  json states = json::array();
  for (std::size_t c = 0; c < m.characters(); ++c) states.push_back(m.state_names(c));
  json out{{"taxa", m.taxa()}, {"characters", m.characters()}, {"state_counts", m.state_counts()},
           {"rows", m.rows()}, {"state_names", std::move(states)}};
  if (!m.row_labels().empty()) out["row_labels"] = m.row_labels();
  if (!m.char_labels().empty()) out["char_labels"] = m.char_labels();
  return out;
}

inline json to_json(const ObstructionPattern& p) {
  return {{"kind", to_string(p.kind)}, {"canonical_rows", p.canonical_rows}, {"cycle", to_json(p.cycle)}};
}

inline json to_json(const PhyloTree& t, const CharacterMatrix& m) {
  json nodes = json::array();
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    json node{{"id", i}, {"species", t.nodes[i].species}};
    if (t.nodes[i].row) node["row"] = *t.nodes[i].row;
    nodes.push_back(std::move(node));
  }
  json edges = json::array();
  for (auto [a, b] : t.edges) edges.push_back({a, b});
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}, {"leaf_of_row", t.leaf_of_row},
          {"newick", t.to_newick(m)}};
}

inline json header(std::string_view command, std::string_view input_digest) {
  return {{"command", command}, {"input_digest", input_digest}};
}

inline json verdict(std::string_view command, std::string_view input_digest, const Verdict& v,
                    const CharacterMatrix& m) {
  json out = header(command, input_digest);
  if (v.is_tree()) {
    const auto& t = v.tree();
    out["verdict"] = "tree";
    out["f_edges"] = to_json(t.f_edges);
    out["f_prime_edges"] = to_json(t.f_prime_edges);
    out["tree"] = to_json(t.tree, m);
  } else {
    const auto& w = v.witness();
    out["verdict"] = "witness";
    out["witness"] = {{"characters", to_json(w.characters)},
                      {"reason", to_string(w.detail.reason)},
                      {"cycle", to_json(w.detail.cycle)}};
    out["pattern"] = to_json(w.pattern);
    out["f_edges"] = json::array();
    out["f_prime_edges"] = json::array();
  }
  return out;
}

inline json hypergraph(std::string_view command, std::string_view input_digest, const ConflictHypergraph& h) {
  json out = header(command, input_digest);
  json e2 = json::array(), e3 = json::array();
  for (const auto& e : h.edges2) e2.push_back(to_json(e));
  for (const auto& e : h.edges3) e3.push_back(to_json(e));
  out["vertices"] = h.vertices;
  out["edges2"] = std::move(e2);
  out["edges3"] = std::move(e3);
  return out;
}

inline json removal(std::string_view command, std::string_view input_digest, std::size_t k,
                    const std::optional<CharacterSubset>& removed) {
  json out = header(command, input_digest);
  out["k"] = k;
  out["found"] = removed.has_value();
  out["removed"] = removed ? to_json(*removed) : json(nullptr);
  return out;
}

inline json oracle(std::string_view command, std::string_view input_digest, const OracleResult& r) {
  json out = header(command, input_digest);
  out["compatible"] = r.compatible;
  out["nodes"] = r.nodes;
  json fill = json::array();
  if (r.triangulation)
    for (auto [a, b] : r.triangulation->edges(EdgeTag::f))
      fill.push_back({to_string(r.triangulation->vertex(a)), to_string(r.triangulation->vertex(b))});
  out["fill_edges"] = std::move(fill);
  return out;
}

inline json fitch_meacham(std::string_view command, const FMInstance& fm) {
  json out = header(command, "");
  out["r"] = fm.r;
  out["cliques"] = fm.cliques;
  out["matrix"] = to_json(fm.matrix);
  return out;
}

}  // namespace phylo3::report
