#include <gtest/gtest.h>

#include <random>

#include "phylo3/hypergraph.hpp"
#include "phylo3/oracle.hpp"
#include "support/corpus.hpp"

using namespace phylo3;

namespace {

const corpus::Rows kF3{{0, 0, 0}, {1, 1, 1}, {0, 1, 2}, {2, 0, 1}, {1, 2, 0}};

}  // namespace

TEST(Hypergraph, CompatibleIsEmpty) {
  EXPECT_TRUE(conflict_hypergraph(CharacterMatrix::from_rows({{0, 0, 0}, {0, 1, 1}, {1, 1, 2}})).empty());
}

TEST(Hypergraph, FitchMeachamThree) {
  const auto h = conflict_hypergraph(CharacterMatrix::from_rows(kF3));
  EXPECT_TRUE(h.edges2.empty());
  ASSERT_EQ(h.edges3.size(), 1u);
  EXPECT_EQ(h.edges3[0], (CharacterSubset{0, 1, 2}));
}

TEST(Hypergraph, PairPlusConstant) {
  const auto h = conflict_hypergraph(CharacterMatrix::parse("0,0,7\n0,1,7\n1,0,7\n1,1,7"));
  ASSERT_EQ(h.edges2.size(), 1u);
  EXPECT_EQ(h.edges2[0], (CharacterSubset{0, 1}));
  EXPECT_TRUE(h.edges3.empty());
}

TEST(Hypergraph, MatchesDefinition) {
  for (const auto& m : corpus::mixed_corpus(61, 300)) {
    const auto h = conflict_hypergraph(m, 2);
    std::vector<CharacterSubset> e2, e3;
    const std::size_t k = m.characters();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (!brute_pp(restrict(m, {i, j}))) e2.push_back({i, j});
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        for (std::size_t l = j + 1; l < k; ++l) {
          const bool pairs_ok = brute_pp(restrict(m, {i, j})) && brute_pp(restrict(m, {i, l})) &&
                                brute_pp(restrict(m, {j, l}));
          if (pairs_ok && !brute_pp(restrict(m, {i, j, l}))) e3.push_back({i, j, l});
        }
    EXPECT_EQ(h.edges2, e2);
    EXPECT_EQ(h.edges3, e3);
  }
}

TEST(Hit3, Examples) {
  EXPECT_EQ(hit3({4, {}, 0}), std::vector<std::size_t>{});
  EXPECT_EQ(hit3({3, {{0, 1, 2}}, 1}), (std::vector<std::size_t>{0}));
  const std::vector<std::vector<std::size_t>> triangle{{1, 2}, {2, 3}, {1, 3}};
  EXPECT_FALSE(hit3({4, triangle, 1}));
  EXPECT_EQ(hit3({4, triangle, 2}), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(corpus::brute_hitting_set(4, triangle, 2), (std::vector<std::size_t>{1, 2}));
}

TEST(Hit3, Reductions) {
  // singleton forces 3; the superset {3,4} and the duplicate vanish
  EXPECT_EQ(hit3({5, {{3}, {3, 4}, {0, 1}, {1, 0}}, 2}), (std::vector<std::size_t>{0, 3}));
}

TEST(Hit3, Errors) {
  try {
    hit3({3, {{}}, 1});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::empty_member);
  }
  EXPECT_THROW(hit3({5, {{0, 1, 2, 3}}, 1}), error);
  EXPECT_THROW(hit3({2, {{0, 2}}, 1}), error);
}

TEST(Hit3, MatchesBruteForce) {
  std::mt19937 rng(71);
  for (int i = 0; i < 500; ++i) {
    const std::size_t ground = 3 + static_cast<std::size_t>(i % 6);
    std::vector<std::vector<std::size_t>> members;
    const int count = 1 + i % 8;
    for (int j = 0; j < count; ++j) {
      std::vector<std::size_t> s;
      const std::size_t size = 1 + std::uniform_int_distribution<std::size_t>(0, 2)(rng);
      while (s.size() < size) {
        const std::size_t x = std::uniform_int_distribution<std::size_t>(0, ground - 1)(rng);
        if (std::find(s.begin(), s.end(), x) == s.end()) s.push_back(x);
      }
      members.push_back(s);
    }
    const std::size_t k = static_cast<std::size_t>(i % 5);
    EXPECT_EQ(hit3({ground, members, k}), corpus::brute_hitting_set(ground, members, k));
  }
}

TEST(CharacterRemoval, Examples) {
  EXPECT_EQ(character_removal(CharacterMatrix::from_rows({{0, 0}, {1, 1}}), 0), CharacterSubset{});
  EXPECT_EQ(character_removal(CharacterMatrix::from_rows(kF3), 1), (CharacterSubset{0}));
  EXPECT_FALSE(character_removal(CharacterMatrix::from_rows(kF3), 0));
}

TEST(CharacterRemoval, TwoFitchMeachamBlocks) {
  const auto m = corpus::block_diagonal({kF3, kF3});
  const auto removed = character_removal(m, 3);
  ASSERT_TRUE(removed);
  EXPECT_EQ(*removed, (CharacterSubset{0, 3}));
  EXPECT_EQ(corpus::brute_removal_size(m, 3), 2u);
  EXPECT_TRUE(full_test(restrict(m, removed->complement(m.characters()))).is_tree());
}

TEST(CharacterRemoval, OptimalAndSound) {
  std::mt19937 rng(83);
  int incompatible = 0;
  for (int i = 0; i < 150; ++i) {
    const auto m = CharacterMatrix::from_rows(corpus::random_rows(rng, 4 + static_cast<std::size_t>(i % 3), 5, 3));
    const auto removed = character_removal(m, 5);
    ASSERT_TRUE(removed);
    incompatible += !removed->empty();
    const auto keep = removed->complement(m.characters());
    if (!keep.empty()) {
      EXPECT_TRUE(full_test(restrict(m, keep)).is_tree());
    }
    EXPECT_EQ(corpus::brute_removal_size(m, 5), removed->size());
  }
  EXPECT_GT(incompatible, 75);
}
