#pragma once

// Chordality, chordless cycles (holes) and minimal separators on colored
// graphs. Edge tags are ignored here: every edge counts.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "phylo3/error.hpp"
#include "phylo3/graph.hpp"

namespace phylo3 {

/// Closed cycle v1..vk. Reported chordless cycles are canonical: they start
/// at their smallest vertex and the second vertex is smaller than the last.
struct Cycle {
  std::vector<std::size_t> vertices;

  std::size_t length() const noexcept { return vertices.size(); }
  friend bool operator==(const Cycle&, const Cycle&) = default;
  friend auto operator<=>(const Cycle&, const Cycle&) = default;
};

struct Separator {
  std::vector<std::size_t> vertices;  // sorted
  std::size_t u = 0;
  std::size_t v = 0;

  friend bool operator==(const Separator&, const Separator&) = default;
};

/// Maximum cardinality search visit order, ties broken by lowest vertex id.
inline std::vector<std::size_t> mcs_order(const ColoredGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> weight(n, 0), order;
  std::vector<bool> done(n, false);
  order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!done[v] && (best == n || weight[v] > weight[best])) best = v;
    done[best] = true;
    order.push_back(best);
    for (std::size_t w : g.neighbors(best))
      if (!done[w]) ++weight[w];
  }
  return order;
}

/// True iff the reverse MCS order is a perfect elimination ordering.
inline bool is_chordal(const ColoredGraph& g) {
  const std::size_t n = g.size();
  const auto order = mcs_order(g);
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
  for (std::size_t v = 0; v < n; ++v) {
    // earlier-visited neighbors must form a clique; it suffices that all of
    // them are adjacent to the latest-visited one.
    std::optional<std::size_t> parent;
    for (std::size_t w : g.neighbors(v))
      if (pos[w] < pos[v] && (!parent || pos[w] > pos[*parent])) parent = w;
    if (!parent) continue;
    for (std::size_t w : g.neighbors(v))
      if (pos[w] < pos[v] && w != *parent && !g.adjacent(w, *parent)) return false;
  }
  return true;
}

/// Direct recheck: consecutive vertices adjacent, no repeats, no chords.
inline bool is_chordless_cycle(const ColoredGraph& g, const Cycle& c) {
  const auto& vs = c.vertices;
  const std::size_t k = vs.size();
  if (k < 4) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (vs[i] >= g.size()) return false;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (vs[i] == vs[j]) return false;
      const bool consecutive = j == i + 1 || (i == 0 && j == k - 1);
      if (g.adjacent(vs[i], vs[j]) != consecutive) return false;
    }
  }
  return true;
}

namespace detail {

// Depth-first extension of induced paths rooted at `start`, using only
// vertices greater than `start`. Each hole is reported once, in canonical
// orientation, in lexicographic order for this start. Returning false from
// `visit` stops the search.
class HoleSearch {
 public:
  HoleSearch(const ColoredGraph& g, std::size_t start, std::size_t max_len,
             const std::vector<std::size_t>* dist_to_start)
      : g_(g), start_(start), max_len_(max_len), dist_(dist_to_start), on_path_(g.size(), false) {}

  bool run(const std::function<bool(const Cycle&)>& visit) {
    visit_ = &visit;
    path_.assign(1, start_);
    on_path_[start_] = true;
    for (std::size_t w : g_.neighbors(start_)) {
      if (w < start_) continue;
      if (!step(w)) return false;
    }
    return true;
  }

 private:
  bool step(std::size_t w) {
    path_.push_back(w);
    on_path_[w] = true;
    const bool keep_going = extend();
    on_path_[w] = false;
    path_.pop_back();
    return keep_going;
  }

  bool extend() {
    const std::size_t last = path_.back();
    for (std::size_t w : g_.neighbors(last)) {
      if (w < start_ || on_path_[w]) continue;
      bool blocked = false;
      for (std::size_t i = 1; i + 1 < path_.size(); ++i)
        if (g_.adjacent(w, path_[i])) {
          blocked = true;
          break;
        }
      if (blocked) continue;
      const std::size_t cycle_len = path_.size() + 1;
      if (g_.adjacent(w, start_)) {
        if (cycle_len >= 4 && cycle_len <= max_len_ && path_[1] < w) {
          Cycle c;
          c.vertices = path_;
          c.vertices.push_back(w);
          if (!(*visit_)(c)) return false;
        }
        continue;
      }
      if (cycle_len >= max_len_) continue;
      if (dist_ && (*dist_)[w] != std::numeric_limits<std::size_t>::max() && cycle_len + (*dist_)[w] - 1 > max_len_)
        continue;
      if (!step(w)) return false;
    }
    return true;
  }

  const ColoredGraph& g_;
  std::size_t start_;
  std::size_t max_len_;
  const std::vector<std::size_t>* dist_;
  std::vector<bool> on_path_;
  std::vector<std::size_t> path_;
  const std::function<bool(const Cycle&)>* visit_ = nullptr;
};

// BFS distances from `src` over vertices >= src.
inline std::vector<std::size_t> distances_above(const ColoredGraph& g, std::size_t src) {
  std::vector<std::size_t> dist(g.size(), std::numeric_limits<std::size_t>::max());
  std::deque<std::size_t> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t y : g.neighbors(x))
      if (y >= src && dist[y] == std::numeric_limits<std::size_t>::max()) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
  }
  return dist;
}

// Length of the shortest hole, or 0 if there is none. For a middle vertex b
// with nonadjacent neighbors a and c, a shortest a-c path avoiding the rest
// of N[b] closes a hole; minimizing over (a, b, c) gives the shortest.
inline std::size_t shortest_hole_length(const ColoredGraph& g) {
  const std::size_t n = g.size();
  std::size_t best = 0;
  std::vector<std::size_t> dist(n);
  for (std::size_t b = 0; b < n; ++b) {
    const auto& nb = g.neighbors(b);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        const std::size_t a = nb[i], c = nb[j];
        if (g.adjacent(a, c)) continue;
        std::fill(dist.begin(), dist.end(), std::numeric_limits<std::size_t>::max());
        std::deque<std::size_t> queue{a};
        dist[a] = 0;
        while (!queue.empty() && dist[c] == std::numeric_limits<std::size_t>::max()) {
          std::size_t x = queue.front();
          queue.pop_front();
          for (std::size_t y : g.neighbors(x)) {
            if (dist[y] != std::numeric_limits<std::size_t>::max() || y == b) continue;
            if (y != c && g.adjacent(y, b)) continue;
            dist[y] = dist[x] + 1;
            queue.push_back(y);
          }
        }
        if (dist[c] != std::numeric_limits<std::size_t>::max()) {
          const std::size_t len = dist[c] + 2;
          if (best == 0 || len < best) best = len;
        }
      }
  }
  return best;
}

}  // namespace detail

/// Visits every chordless cycle of length >= 4 with at most `max_len`
/// vertices, each once, ordered by smallest vertex then lexicographically.
inline void for_each_chordless_cycle(const ColoredGraph& g, const std::function<bool(const Cycle&)>& visit,
                                     std::size_t max_len = std::numeric_limits<std::size_t>::max()) {
  for (std::size_t s = 0; s < g.size(); ++s) {
    detail::HoleSearch search(g, s, max_len, nullptr);
    if (!search.run(visit)) return;
  }
}

inline std::vector<Cycle> all_chordless_cycles(const ColoredGraph& g) {
  std::vector<Cycle> out;
  for_each_chordless_cycle(g, [&](const Cycle& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

/// Shortest chordless cycle, ties broken by the lexicographically smallest
/// canonical vertex sequence; absent iff the graph is chordal.
inline std::optional<Cycle> find_chordless_cycle(const ColoredGraph& g) {
  if (is_chordal(g)) return std::nullopt;
  const std::size_t len = detail::shortest_hole_length(g);
  if (len == 0) throw error(errc::internal_contradiction, "non-chordal graph without a hole");
  for (std::size_t s = 0; s < g.size(); ++s) {
    const auto dist = detail::distances_above(g, s);
    std::optional<Cycle> found;
    detail::HoleSearch search(g, s, len, &dist);
    search.run([&](const Cycle& c) {
      if (c.length() != len) return true;
      found = c;
      return false;
    });
    if (found) return found;
  }
  throw error(errc::internal_contradiction, "shortest hole not re-found");
}

/// Longest chordless cycle by exhaustive enumeration (lexicographically
/// smallest among the longest).
inline std::optional<Cycle> largest_chordless_cycle(const ColoredGraph& g, std::size_t max_vertices = 12) {
  if (g.size() > max_vertices)
    throw error(errc::too_large, std::to_string(g.size()) + " vertices exceeds " + std::to_string(max_vertices));
  std::optional<Cycle> best;
  for_each_chordless_cycle(g, [&](const Cycle& c) {
    if (!best || c.length() > best->length() || (c.length() == best->length() && c < *best)) best = c;
    return true;
  });
  return best;
}

namespace detail {

// Connected component of `src` in g minus the vertices flagged in `removed`.
inline std::vector<bool> component(const ColoredGraph& g, std::size_t src, const std::vector<bool>& removed) {
  std::vector<bool> in(g.size(), false);
  if (removed[src]) return in;
  std::deque<std::size_t> queue{src};
  in[src] = true;
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t y : g.neighbors(x))
      if (!in[y] && !removed[y]) {
        in[y] = true;
        queue.push_back(y);
      }
  }
  return in;
}

// Open neighborhood of a vertex set, as a sorted list.
inline std::vector<std::size_t> boundary(const ColoredGraph& g, const std::vector<bool>& set) {
  std::vector<bool> mark(g.size(), false);
  for (std::size_t x = 0; x < g.size(); ++x)
    if (set[x])
      for (std::size_t y : g.neighbors(x))
        if (!set[y]) mark[y] = true;
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < g.size(); ++x)
    if (mark[x]) out.push_back(x);
  return out;
}

}  // namespace detail

/// All minimal u,v-separators for a nonadjacent pair. Starts from the
/// separator closest to u and expands by absorbing one separator vertex
/// (and its neighborhood) at a time.
inline std::vector<Separator> minimal_separators(const ColoredGraph& g, std::size_t u, std::size_t v) {
  const std::size_t n = g.size();
  if (u >= n || v >= n) throw error(errc::index_out_of_range, "separator endpoint");
  if (u == v || g.adjacent(u, v)) return {};

  auto close_to = [&](const std::vector<bool>& y) {
    std::vector<bool> removed = y;
    for (std::size_t x = 0; x < n; ++x)
      if (y[x])
        for (std::size_t w : g.neighbors(x)) removed[w] = true;
    return detail::boundary(g, detail::component(g, v, removed));
  };

  std::set<std::vector<std::size_t>> seen;
  std::deque<std::vector<std::size_t>> queue;
  {
    std::vector<bool> y(n, false);
    y[u] = true;
    auto s0 = close_to(y);
    seen.insert(s0);
    queue.push_back(std::move(s0));
  }
  while (!queue.empty()) {
    auto s = std::move(queue.front());
    queue.pop_front();
    std::vector<bool> removed(n, false);
    for (std::size_t x : s) removed[x] = true;
    const auto side_u = detail::component(g, u, removed);
    for (std::size_t x : s) {
      if (g.adjacent(x, v)) continue;
      auto y = side_u;
      y[x] = true;
      auto next = close_to(y);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  std::vector<Separator> out;
  for (const auto& s : seen) out.push_back({s, u, v});
  return out;
}

/// Minimal separators for every nonadjacent vertex pair (u < v).
inline std::vector<Separator> minimal_separators(const ColoredGraph& g, std::size_t max_vertices = 15) {
  if (g.size() > max_vertices)
    throw error(errc::too_large, std::to_string(g.size()) + " vertices exceeds " + std::to_string(max_vertices));
  std::vector<Separator> out;
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t v = u + 1; v < g.size(); ++v) {
      auto seps = minimal_separators(g, u, v);
      out.insert(out.end(), seps.begin(), seps.end());
    }
  return out;
}

/// True iff removing `vertices` leaves u and v in different components.
inline bool separates(const ColoredGraph& g, const std::vector<std::size_t>& vertices, std::size_t u, std::size_t v) {
  std::vector<bool> removed(g.size(), false);
  for (std::size_t x : vertices) removed[x] = true;
  if (removed[u] || removed[v]) return false;
  return !detail::component(g, u, removed)[v];
}

/// A separator is legal when no two of its vertices share a color.
inline bool is_legal_separator(const ColoredGraph& g, const Separator& sep) {
  std::set<std::size_t> colors;
  for (std::size_t x : sep.vertices)
    if (!colors.insert(g.color(x)).second) return false;
  return true;
}

}  // namespace phylo3
