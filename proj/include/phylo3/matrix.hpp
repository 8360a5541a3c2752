#pragma once

// Character matrices: n taxa (rows) by m characters (columns), with states
// densely encoded per column as 0..r_i-1.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "phylo3/error.hpp"

namespace phylo3 {

using state_t = int;

/// Sorted, duplicate-free list of character (column) indices.
class CharacterSubset {
 public:
  CharacterSubset() = default;
  CharacterSubset(std::initializer_list<std::size_t> chars) : CharacterSubset(std::vector<std::size_t>(chars)) {}
  explicit CharacterSubset(std::vector<std::size_t> chars) : chars_(std::move(chars)) {
    std::sort(chars_.begin(), chars_.end());
    chars_.erase(std::unique(chars_.begin(), chars_.end()), chars_.end());
  }

  static CharacterSubset all(std::size_t m) {
    std::vector<std::size_t> v(m);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return CharacterSubset(std::move(v));
  }

  std::size_t size() const noexcept { return chars_.size(); }
  bool empty() const noexcept { return chars_.empty(); }
  std::size_t operator[](std::size_t i) const { return chars_[i]; }
  auto begin() const noexcept { return chars_.begin(); }
  auto end() const noexcept { return chars_.end(); }
  const std::vector<std::size_t>& indices() const noexcept { return chars_; }

  bool contains(std::size_t c) const { return std::binary_search(chars_.begin(), chars_.end(), c); }

  CharacterSubset complement(std::size_t m) const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < m; ++c)
      if (!contains(c)) out.push_back(c);
    return CharacterSubset(std::move(out));
  }

  void validate(std::size_t m) const {
    if (!chars_.empty() && chars_.back() >= m)
      throw error(errc::index_out_of_range,
                  "character " + std::to_string(chars_.back()) + " with m=" + std::to_string(m));
  }

  friend bool operator==(const CharacterSubset&, const CharacterSubset&) = default;
  friend auto operator<=>(const CharacterSubset&, const CharacterSubset&) = default;

 private:
  std::vector<std::size_t> chars_;
};

enum class Dialect { csv, whitespace };

struct ParseOptions {
  Dialect dialect = Dialect::csv;
  bool header = false;      // first line carries character labels
  bool row_labels = false;  // first field of each line is a taxon label
};

/// Immutable n x m matrix of dense per-column states.
///
/// Each column keeps the original token for every dense state id so that a
/// parsed matrix can be written back out unchanged. Duplicate rows and
/// columns are retained: witnesses refer to original indices.
class CharacterMatrix {
 public:
  CharacterMatrix() = default;

  /// Builds a matrix from integer rows. Each column is densified in
  /// increasing value order, so already-dense input keeps its numbering.
  static CharacterMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    if (rows.empty()) throw error(errc::empty_input, "no rows");
    const std::size_t m = rows.front().size();
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (rows[r].size() != m) throw error(errc::ragged_row, "row " + std::to_string(r));

    CharacterMatrix out;
    out.n_ = rows.size();
    out.m_ = m;
    out.cells_.assign(out.n_ * m, 0);
    out.counts_.assign(m, 0);
    out.state_names_.assign(m, {});
    for (std::size_t c = 0; c < m; ++c) {
      std::vector<int> values;
      for (const auto& row : rows) values.push_back(row[c]);
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      for (std::size_t r = 0; r < out.n_; ++r) {
        auto it = std::lower_bound(values.begin(), values.end(), rows[r][c]);
        out.cells_[r * m + c] = static_cast<state_t>(it - values.begin());
      }
      out.counts_[c] = static_cast<int>(values.size());
      for (int v : values) out.state_names_[c].push_back(std::to_string(v));
    }
    return out;
  }

  /// Parses a delimited table. Tokens are mapped to dense ids per column in
  /// order of first appearance.
  static CharacterMatrix parse(std::string_view text, const ParseOptions& opts = {}) {
    std::vector<std::vector<std::string>> table;
    std::vector<std::string> header;
    std::vector<std::string> labels;

    std::size_t pos = 0;
    bool header_pending = opts.header;
    while (pos <= text.size()) {
      std::size_t eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      std::string_view line = text.substr(pos, eol - pos);
      pos = eol + 1;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (trim(line).empty() || trim(line).front() == '#') continue;

      std::vector<std::string> fields = split(line, opts.dialect);
      if (header_pending) {
        header = std::move(fields);
        header_pending = false;
        continue;
      }
      if (opts.row_labels) {
        if (fields.empty()) throw error(errc::ragged_row, "row " + std::to_string(table.size()));
        labels.push_back(fields.front());
        fields.erase(fields.begin());
      }
      table.push_back(std::move(fields));
    }
    if (table.empty() || table.front().empty()) throw error(errc::empty_input, "no data rows");

    const std::size_t m = table.front().size();
    for (std::size_t r = 0; r < table.size(); ++r) {
      if (table[r].size() != m) throw error(errc::ragged_row, "row " + std::to_string(r));
      for (std::size_t c = 0; c < m; ++c)
        if (is_missing(table[r][c]))
          throw error(errc::missing_value, "row " + std::to_string(r) + ", column " + std::to_string(c));
    }

    CharacterMatrix out;
    out.n_ = table.size();
    out.m_ = m;
    out.cells_.assign(out.n_ * m, 0);
    out.counts_.assign(m, 0);
    out.state_names_.assign(m, {});
    for (std::size_t c = 0; c < m; ++c) {
      std::unordered_map<std::string, state_t> ids;
      for (std::size_t r = 0; r < out.n_; ++r) {
        const std::string& tok = table[r][c];
        auto [it, inserted] = ids.emplace(tok, static_cast<state_t>(ids.size()));
        if (inserted) out.state_names_[c].push_back(tok);
        out.cells_[r * m + c] = it->second;
      }
      out.counts_[c] = static_cast<int>(ids.size());
    }
    if (opts.header) {
      if (opts.row_labels && header.size() == m + 1) header.erase(header.begin());
      if (header.size() != m) throw error(errc::ragged_row, "header");
      out.char_labels_ = std::move(header);
    }
    out.row_labels_ = std::move(labels);
    return out;
  }

  std::size_t taxa() const noexcept { return n_; }
  std::size_t characters() const noexcept { return m_; }

  state_t state(std::size_t row, std::size_t ch) const { return cells_[row * m_ + ch]; }
  std::span<const state_t> row(std::size_t r) const { return {cells_.data() + r * m_, m_}; }
  std::vector<std::vector<state_t>> rows() const {
    std::vector<std::vector<state_t>> out;
    for (std::size_t r = 0; r < n_; ++r) out.emplace_back(row(r).begin(), row(r).end());
    return out;
  }

  int state_count(std::size_t ch) const { return counts_[ch]; }
  const std::vector<int>& state_counts() const noexcept { return counts_; }
  int max_state_count() const {
    return counts_.empty() ? 0 : *std::max_element(counts_.begin(), counts_.end());
  }

  const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
  const std::vector<std::string>& char_labels() const noexcept { return char_labels_; }
  const std::vector<std::string>& state_names(std::size_t ch) const { return state_names_[ch]; }

  /// Copy with states renumbered per column by first appearance.
  CharacterMatrix normalized() const {
    std::vector<std::vector<int>> perms(m_);
    for (std::size_t c = 0; c < m_; ++c) {
      perms[c].assign(static_cast<std::size_t>(counts_[c]), -1);
      int next = 0;
      for (std::size_t r = 0; r < n_; ++r) {
        int& slot = perms[c][static_cast<std::size_t>(state(r, c))];
        if (slot < 0) slot = next++;
      }
    }
    std::vector<std::size_t> ident(m_);
    std::iota(ident.begin(), ident.end(), std::size_t{0});
    return relabel(*this, ident, perms);
  }

  /// Writes the table back out using the retained state tokens.
  std::string serialize(Dialect dialect = Dialect::csv) const {
    const char sep = dialect == Dialect::csv ? ',' : ' ';
    std::string out;
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c = 0; c < m_; ++c) {
        if (c) out += sep;
        out += state_name(c, state(r, c));
      }
      out += '\n';
    }
    return out;
  }

  std::string state_name(std::size_t ch, state_t s) const {
    const auto& names = state_names_[ch];
    return static_cast<std::size_t>(s) < names.size() ? names[static_cast<std::size_t>(s)] : std::to_string(s);
  }

  friend bool operator==(const CharacterMatrix&, const CharacterMatrix&) = default;

  friend CharacterMatrix restrict(const CharacterMatrix& matrix, const CharacterSubset& subset);
  friend CharacterMatrix relabel(const CharacterMatrix& matrix, std::span<const std::size_t> char_perm,
                                 const std::vector<std::vector<int>>& state_perms);

 private:
  static std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  }

  static std::vector<std::string> split(std::string_view line, Dialect dialect) {
    std::vector<std::string> out;
    if (dialect == Dialect::csv) {
      std::size_t start = 0;
      while (true) {
        std::size_t comma = line.find(',', start);
        std::string_view tok = line.substr(start, comma == std::string_view::npos ? line.size() - start : comma - start);
        out.emplace_back(trim(tok));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
    } else {
      std::istringstream in{std::string(line)};
      std::string tok;
      while (in >> tok) out.push_back(tok);
    }
    return out;
  }

  static bool is_missing(const std::string& tok) { return tok.empty() || tok == "?"; }

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<state_t> cells_;
  std::vector<int> counts_;
  std::vector<std::vector<std::string>> state_names_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> char_labels_;
};

/// Column projection onto `subset`. Row order and duplicate rows are kept.
inline CharacterMatrix restrict(const CharacterMatrix& matrix, const CharacterSubset& subset) {
  subset.validate(matrix.m_);
  CharacterMatrix out;
  out.n_ = matrix.n_;
  out.m_ = subset.size();
  out.cells_.reserve(out.n_ * out.m_);
  for (std::size_t r = 0; r < matrix.n_; ++r)
    for (std::size_t c : subset) out.cells_.push_back(matrix.state(r, c));
  for (std::size_t c : subset) {
    // Projection never drops rows, so every state of a kept column survives
    // and the column stays dense.
    out.counts_.push_back(matrix.counts_[c]);
    out.state_names_.push_back(matrix.state_names_[c]);
    if (!matrix.char_labels_.empty()) out.char_labels_.push_back(matrix.char_labels_[c]);
  }
  out.row_labels_ = matrix.row_labels_;
  return out;
}

/// Permutes columns and renames states. Output column j is input column
/// char_perm[j]; state_perms is indexed by input column and maps old state
/// ids to new ones.
inline CharacterMatrix relabel(const CharacterMatrix& matrix, std::span<const std::size_t> char_perm,
                               const std::vector<std::vector<int>>& state_perms) {
  const std::size_t m = matrix.m_;
  if (char_perm.size() != m || state_perms.size() != m)
    throw error(errc::size_mismatch, "permutation sizes do not match the matrix");
  std::vector<bool> seen(m, false);
  for (std::size_t c : char_perm) {
    if (c >= m || seen[c]) throw error(errc::size_mismatch, "character permutation is not a bijection");
    seen[c] = true;
  }
  for (std::size_t c = 0; c < m; ++c) {
    const auto& p = state_perms[c];
    if (p.size() != static_cast<std::size_t>(matrix.counts_[c]))
      throw error(errc::size_mismatch, "state permutation size for character " + std::to_string(c));
    std::vector<bool> hit(p.size(), false);
    for (int s : p) {
      if (s < 0 || static_cast<std::size_t>(s) >= p.size() || hit[static_cast<std::size_t>(s)])
        throw error(errc::size_mismatch, "state permutation for character " + std::to_string(c));
      hit[static_cast<std::size_t>(s)] = true;
    }
  }

  CharacterMatrix out;
  out.n_ = matrix.n_;
  out.m_ = m;
  out.cells_.resize(matrix.cells_.size());
  for (std::size_t r = 0; r < matrix.n_; ++r)
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t src = char_perm[j];
      out.cells_[r * m + j] = state_perms[src][static_cast<std::size_t>(matrix.state(r, src))];
    }
  out.counts_.resize(m);
  out.state_names_.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t src = char_perm[j];
    out.counts_[j] = matrix.counts_[src];
    const auto& names = matrix.state_names_[src];
    if (!names.empty()) {
      out.state_names_[j].resize(names.size());
      for (std::size_t s = 0; s < names.size(); ++s)
        out.state_names_[j][static_cast<std::size_t>(state_perms[src][s])] = names[s];
    }
    if (!matrix.char_labels_.empty()) out.char_labels_.push_back(matrix.char_labels_[src]);
  }
  out.row_labels_ = matrix.row_labels_;
  return out;
}

/// Throws StateBound unless every character has at most `bound` states.
inline void require_state_bound(const CharacterMatrix& matrix, int bound = 3) {
  for (std::size_t c = 0; c < matrix.characters(); ++c)
    if (matrix.state_count(c) > bound)
      throw error(errc::state_bound, "character " + std::to_string(c) + " has " +
                                         std::to_string(matrix.state_count(c)) + " states");
}

}  // namespace phylo3
