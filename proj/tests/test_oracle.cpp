#include <gtest/gtest.h>

#include <random>

#include "phylo3/fitch_meacham.hpp"
#include "phylo3/oracle.hpp"
#include "support/corpus.hpp"

using namespace phylo3;

TEST(Oracle, Examples) {
  EXPECT_FALSE(brute_pp(generate_fm(2).matrix));
  EXPECT_TRUE(brute_pp(CharacterMatrix::from_rows({{0, 1, 2, 0}})));
  const auto f3 = generate_fm(3).matrix;
  EXPECT_FALSE(brute_pp(f3));
  EXPECT_TRUE(brute_pp(restrict(f3, {0, 1})));
  EXPECT_TRUE(brute_pp(restrict(f3, {0, 2})));
  EXPECT_TRUE(brute_pp(restrict(f3, {1, 2})));
}

TEST(Oracle, TriangulationIsProperAndChordal) {
  std::mt19937 rng(97);
  int found = 0;
  for (int i = 0; i < 400; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 6), m = 2 + static_cast<std::size_t>(i % 4);
    const auto mat = CharacterMatrix::from_rows(corpus::random_rows(rng, n, m, 3));
    const auto r = oracle_search(mat);
    ASSERT_EQ(r.compatible, r.triangulation.has_value());
    if (!r.compatible) continue;
    ++found;
    const auto& g = *r.triangulation;
    EXPECT_TRUE(is_chordal(g));
    const auto base = build(mat);
    for (auto [u, v] : g.edges()) {
      EXPECT_NE(g.color(u), g.color(v));
      if (!base.adjacent(u, v)) {
        EXPECT_EQ(g.tag(u, v), EdgeTag::f);
      }
    }
    for (auto [u, v] : base.edges()) EXPECT_TRUE(g.adjacent(u, v));
  }
  EXPECT_GT(found, 50);
}

TEST(Oracle, SimulatedMatricesAreCompatible) {
  std::mt19937 rng(101);
  for (int i = 0; i < 200; ++i) {
    const auto m = CharacterMatrix::from_rows(corpus::simulated_rows(rng, 1 + static_cast<std::size_t>(i % 8), 4, 4));
    EXPECT_TRUE(brute_pp(m)) << m.serialize();
  }
}

TEST(Oracle, MemoDoesNotChangeAnswers) {
  std::mt19937 rng(103);
  OracleOptions no_memo;
  no_memo.memo_capacity = 0;
  OracleOptions tiny;
  tiny.memo_capacity = 2;
  for (int i = 0; i < 200; ++i) {
    const auto m = CharacterMatrix::from_rows(corpus::random_rows(rng, 5, 4, 3));
    const bool answer = brute_pp(m);
    EXPECT_EQ(brute_pp(m, no_memo), answer);
    EXPECT_EQ(brute_pp(m, tiny), answer);
  }
}

TEST(Oracle, TooLarge) {
  OracleOptions small;
  small.max_vertices = 3;
  try {
    brute_pp(generate_fm(2).matrix, small);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::too_large);
  }
  OracleOptions budget;
  budget.node_budget = 1;
  EXPECT_THROW(brute_pp(generate_fm(3).matrix, budget), error);
  EXPECT_THROW(brute_pp(CharacterMatrix{}), error);
}

TEST(Oracle, TwoColorCycleDetection) {
  EXPECT_TRUE(detail::has_two_color_cycle(build(generate_fm(2).matrix)));
  EXPECT_FALSE(detail::has_two_color_cycle(build(generate_fm(3).matrix)));
}
