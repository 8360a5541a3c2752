#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "phylo3/catalog.hpp"
#include "phylo3/classify.hpp"
#include "phylo3/decide.hpp"
#include "phylo3/oracle.hpp"
#include "support/corpus.hpp"

using namespace phylo3;

namespace {

using Rows = corpus::Rows;

bool all_informative(const CharacterMatrix& m) {
  for (int r : m.state_counts())
    if (r < 2) return false;
  return true;
}

bool triple_fails(const Rows& rows) {
  const auto m = CharacterMatrix::from_rows(rows);
  return all_informative(m) && !brute_pp(m);
}

bool pairs_pass(const Rows& rows) {
  const auto m = CharacterMatrix::from_rows(rows);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (!pair_test(m, i, j)) return false;
  return true;
}

// Row sets over {0,1,2}^3 containing 000 whose pairs pass, extended in
// increasing row order; incompatible sets that stay incompatible after
// dropping no single row are the row-minimal obstructions. Decided by the
// oracle, not by the fill loop.
void enumerate(const Rows& universe, Rows& cur, std::size_t next, std::set<Rows>& found) {
  if (triple_fails(cur)) {
    for (std::size_t i = 0; i < cur.size(); ++i) {
      Rows smaller = cur;
      smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
      if (triple_fails(smaller)) return;
    }
    found.insert(canonical_form(CharacterMatrix::from_rows(cur)));
    return;
  }
  for (std::size_t k = next; k < universe.size(); ++k) {
    cur.push_back(universe[k]);
    if (pairs_pass(cur)) enumerate(universe, cur, k + 1, found);
    cur.pop_back();
  }
}

}  // namespace

TEST(CanonicalForm, InvariantUnderRelabeling) {
  std::mt19937 rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto m = CharacterMatrix::from_rows(corpus::random_rows(rng, 5, 3, 3));
    std::vector<std::size_t> p{0, 1, 2};
    std::shuffle(p.begin(), p.end(), rng);
    std::vector<std::vector<int>> q(3);
    for (std::size_t c = 0; c < 3; ++c) {
      q[c].resize(static_cast<std::size_t>(m.state_count(c)));
      std::iota(q[c].begin(), q[c].end(), 0);
      std::shuffle(q[c].begin(), q[c].end(), rng);
    }
    auto rows = m.rows();
    std::shuffle(rows.begin(), rows.end(), rng);
    const auto canon = canonical_form(m);
    EXPECT_EQ(canonical_form(relabel(m, p, q)), canon);
    EXPECT_EQ(canonical_form(CharacterMatrix::from_rows(rows)), canon);
    EXPECT_TRUE(std::is_sorted(canon.begin(), canon.end()));
    EXPECT_EQ(std::adjacent_find(canon.begin(), canon.end()), canon.end());
  }
}

TEST(Classify, CaseThree) {
  const auto m = CharacterMatrix::from_rows({{0, 0, 2}, {2, 0, 0}, {2, 1, 0}, {2, 1, 1}, {0, 2, 1}});
  const auto p = classify(m);
  EXPECT_EQ(p.kind, PatternKind::five_cycle_case_iii);
  EXPECT_EQ(p.cycle.size(), 5u);
}

TEST(Classify, FourGametes) {
  EXPECT_EQ(classify(CharacterMatrix::parse("0,0\n0,1\n1,0\n1,1")).kind, PatternKind::two_color_cycle);
}

TEST(Classify, FitchMeachamThreeIsTheFourCycleObstruction) {
  const auto p = classify(CharacterMatrix::from_rows({{0, 0, 0}, {1, 1, 1}, {0, 1, 2}, {2, 0, 1}, {1, 2, 0}}));
  EXPECT_EQ(p.kind, PatternKind::four_cycle_forced);
  EXPECT_EQ(p.canonical_rows, (Rows{{0, 0, 0}, {0, 1, 1}, {1, 0, 2}, {1, 2, 1}, {2, 1, 2}}));
}

TEST(Classify, RejectsCompatible) {
  try {
    classify(CharacterMatrix::from_rows({{0, 0, 0}, {1, 1, 1}}));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_an_obstruction);
  }
  EXPECT_THROW(classify(CharacterMatrix::from_rows({{0}, {1}})), error);
  EXPECT_THROW(classify(CharacterMatrix::from_rows({{0, 0, 0, 0}})), error);
}

TEST(Classify, Idempotent) {
  for (const auto& e : triple_obstructions()) {
    const auto p = classify(CharacterMatrix::from_rows(e.rows));
    EXPECT_EQ(p.kind, e.kind);
    EXPECT_EQ(p.canonical_rows, e.rows);
    const auto again = classify(p.canonical_matrix());
    EXPECT_EQ(again, p);
  }
}

// The frozen catalog is exactly the set of row-minimal obstructions on
// three characters, recomputed here with the oracle.
TEST(Catalog, MatchesExhaustiveEnumeration) {
  Rows universe;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) universe.push_back({a, b, c});
  Rows cur{universe[0]};
  std::set<Rows> found;
  enumerate(universe, cur, 1, found);

  std::set<Rows> frozen;
  std::map<PatternKind, int> kinds;
  for (const auto& e : triple_obstructions()) {
    frozen.insert(e.rows);
    ++kinds[e.kind];
  }
  EXPECT_EQ(found, frozen);
  EXPECT_EQ(kinds.size(), 4u);
}

TEST(Classify, CorpusWitnessesNeverUnclassified) {
  std::map<PatternKind, int> seen;
  for (const auto& m : corpus::mixed_corpus(55, 600)) {
    const auto v = full_test(m);
    if (v.is_tree()) continue;
    ++seen[v.witness().pattern.kind];
    EXPECT_NE(v.witness().pattern.kind, PatternKind::unclassified) << m.serialize();
  }
  EXPECT_GT(seen[PatternKind::two_color_cycle], 0);
}
