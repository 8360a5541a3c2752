#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace phylo3 {

enum class errc {
  empty_input,
  ragged_row,
  missing_value,
  index_out_of_range,
  size_mismatch,
  monochromatic_edge,
  duplicate_edge,
  too_large,
  state_bound,
  internal_contradiction,
  not_chordal,
  not_proper,
  row_clique_uncovered,
  not_an_obstruction,
  empty_member,
  bad_member,
  bad_r,
};

inline std::string_view to_string(errc code) {
  switch (code) {
    case errc::empty_input: return "EmptyInput";
    case errc::ragged_row: return "RaggedRow";
    case errc::missing_value: return "MissingValue";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::size_mismatch: return "SizeMismatch";
    case errc::monochromatic_edge: return "MonochromaticEdge";
    case errc::duplicate_edge: return "DuplicateEdge";
    case errc::too_large: return "TooLarge";
    case errc::state_bound: return "StateBound";
    case errc::internal_contradiction: return "InternalContradiction";
    case errc::not_chordal: return "NotChordal";
    case errc::not_proper: return "NotProper";
    case errc::row_clique_uncovered: return "RowCliqueUncovered";
    case errc::not_an_obstruction: return "NotAnObstruction";
    case errc::empty_member: return "EmptyMember";
    case errc::bad_member: return "BadMember";
    case errc::bad_r: return "BadR";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace phylo3
