#pragma once

// Conflict hypergraph of a matrix (incompatible pairs plus minimal
// incompatible triples) and minimum character removal through 3-hitting set.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "phylo3/decide.hpp"
#include "phylo3/error.hpp"
#include "phylo3/matrix.hpp"
#include "phylo3/parallel.hpp"
#include "phylo3/triple.hpp"

namespace phylo3 {

struct ConflictHypergraph {
  std::size_t vertices = 0;  // characters 0..vertices-1
  std::vector<CharacterSubset> edges2;
  std::vector<CharacterSubset> edges3;

  bool empty() const noexcept { return edges2.empty() && edges3.empty(); }
};

inline ConflictHypergraph conflict_hypergraph(const CharacterMatrix& matrix, unsigned threads = 1) {
  require_state_bound(matrix);
  ConflictHypergraph h;
  h.vertices = matrix.characters();
  const auto chars = detail::informative_characters(matrix);

  const auto pairs = detail::pairs_of(chars);
  std::vector<char> pair_bad(pairs.size());
  for_each_index(pairs.size(), threads,
                 [&](std::size_t i) { pair_bad[i] = !pair_test(matrix, pairs[i].first, pairs[i].second); });
  std::set<std::pair<std::size_t, std::size_t>> bad;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (pair_bad[i]) {
      bad.insert(pairs[i]);
      h.edges2.push_back(CharacterSubset{pairs[i].first, pairs[i].second});
    }

  std::vector<std::array<std::size_t, 3>> triples;
  for (const auto& t : detail::triples_of(chars))
    if (!bad.count({t[0], t[1]}) && !bad.count({t[0], t[2]}) && !bad.count({t[1], t[2]})) triples.push_back(t);
  std::vector<char> triple_bad(triples.size());
  for_each_index(triples.size(), threads, [&](std::size_t i) {
    triple_bad[i] = !triple_test(matrix, triples[i][0], triples[i][1], triples[i][2]).compatible();
  });
  for (std::size_t i = 0; i < triples.size(); ++i)
    if (triple_bad[i]) h.edges3.push_back(CharacterSubset{triples[i][0], triples[i][1], triples[i][2]});

  for (const auto& t : h.edges3)
    for (const auto& p : h.edges2)
      if (std::includes(t.begin(), t.end(), p.begin(), p.end()))
        throw error(errc::internal_contradiction, "conflict hypergraph is not an antichain");
  return h;
}

struct HittingInstance {
  std::size_t ground = 0;  // elements 0..ground-1
  std::vector<std::vector<std::size_t>> members;
  std::size_t k = 0;
};

namespace detail {

inline std::vector<std::vector<std::size_t>> reduce_members(std::vector<std::vector<std::size_t>> members) {
  for (auto& s : members) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  std::sort(members.begin(), members.end(),
            [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<std::vector<std::size_t>> kept;
  for (const auto& s : members) {
    const bool superset = std::any_of(kept.begin(), kept.end(), [&](const auto& t) {
      return std::includes(s.begin(), s.end(), t.begin(), t.end());
    });
    if (!superset) kept.push_back(s);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

class HittingSearch {
 public:
  explicit HittingSearch(const std::vector<std::vector<std::size_t>>& members) : members_(members) {}

  // Every hitting set of exactly `size` elements reachable by branching.
  std::optional<std::vector<std::size_t>> smallest_of_size(std::size_t size) {
    best_.reset();
    chosen_.clear();
    branch(size);
    return best_;
  }

 private:
  bool hit(const std::vector<std::size_t>& s) const {
    return std::any_of(s.begin(), s.end(),
                       [&](std::size_t x) { return std::find(chosen_.begin(), chosen_.end(), x) != chosen_.end(); });
  }

  void branch(std::size_t budget) {
    const std::vector<std::size_t>* open = nullptr;
    for (const auto& s : members_)
      if (!hit(s)) {
        // a singleton leaves no choice, so take it first
        if (!open || s.size() < open->size()) open = &s;
        if (s.size() == 1) break;
      }
    if (!open) {
      auto sol = chosen_;
      std::sort(sol.begin(), sol.end());
      if (!best_ || sol < *best_) best_ = sol;
      return;
    }
    if (budget == 0) return;
    for (std::size_t x : *open) {
      chosen_.push_back(x);
      branch(budget - 1);
      chosen_.pop_back();
    }
  }

  const std::vector<std::vector<std::size_t>>& members_;
  std::vector<std::size_t> chosen_;
  std::optional<std::vector<std::size_t>> best_;
};

}  // namespace detail

/// Minimum hitting set of size at most k, lexicographically smallest among
/// the minimum ones; absent when every hitting set is larger than k.
inline std::optional<std::vector<std::size_t>> hit3(const HittingInstance& instance) {
  for (const auto& s : instance.members) {
    if (s.empty()) throw error(errc::empty_member, "hitting set member is empty");
    if (s.size() > 3) throw error(errc::bad_member, "member has " + std::to_string(s.size()) + " elements");
    for (std::size_t x : s)
      if (x >= instance.ground) throw error(errc::bad_member, "element " + std::to_string(x) + " outside ground set");
  }
  const auto members = detail::reduce_members(instance.members);
  detail::HittingSearch search(members);
  for (std::size_t size = 0; size <= instance.k; ++size)
    if (auto sol = search.smallest_of_size(size)) return sol;
  return std::nullopt;
}

inline HittingInstance hitting_instance(const ConflictHypergraph& h, std::size_t k) {
  HittingInstance inst{h.vertices, {}, k};
  for (const auto& e : h.edges2) inst.members.emplace_back(e.begin(), e.end());
  for (const auto& e : h.edges3) inst.members.emplace_back(e.begin(), e.end());
  return inst;
}

/// Fewest characters (at most k) whose removal leaves a compatible matrix.
inline std::optional<CharacterSubset> character_removal(const CharacterMatrix& matrix, std::size_t k,
                                                        unsigned threads = 1) {
  const auto h = conflict_hypergraph(matrix, threads);
  auto sol = hit3(hitting_instance(h, k));
  if (!sol) return std::nullopt;
  return CharacterSubset{std::move(*sol)};
}

}  // namespace phylo3
