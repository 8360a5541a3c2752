#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "phylo3/decide.hpp"
#include "phylo3/oracle.hpp"
#include "support/corpus.hpp"

using namespace phylo3;

namespace {

const auto kF3 = CharacterMatrix::from_rows({{0, 0, 0}, {1, 1, 1}, {0, 1, 2}, {2, 0, 1}, {1, 2, 0}});
const auto kChordless4 = CharacterMatrix::from_rows({{1, 0, 2, 0}, {2, 0, 1, 1}, {1, 2, 0, 2}, {0, 1, 1, 2}});

}  // namespace

TEST(FullTest, SingleColumnStar) {
  const auto m = CharacterMatrix::parse("A\nA\nB\nC");
  const auto v = full_test(m);
  ASSERT_TRUE(v.is_tree());
  EXPECT_TRUE(verify_tree(v.tree().tree, m));
}

TEST(FullTest, FitchMeachamThreeWitness) {
  const auto v = full_test(kF3);
  ASSERT_FALSE(v.is_tree());
  EXPECT_EQ(v.witness().characters, (CharacterSubset{0, 1, 2}));
  EXPECT_EQ(v.witness().pattern.kind, PatternKind::four_cycle_forced);
}

TEST(FullTest, FourGametePairWitness) {
  const auto v = full_test(CharacterMatrix::parse("0,0\n0,1\n1,0\n1,1"));
  ASSERT_FALSE(v.is_tree());
  EXPECT_EQ(v.witness().characters, (CharacterSubset{0, 1}));
  EXPECT_EQ(v.witness().pattern.kind, PatternKind::two_color_cycle);
}

TEST(FullTest, ChordlessFourColorCycleNeedsTwoFPrimeEdges) {
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      for (std::size_t k = j + 1; k < 4; ++k) EXPECT_TRUE(is_chordal(build(kChordless4, {i, j, k})));
  EXPECT_FALSE(is_chordal(build(kChordless4)));
  FullTestTrace trace;
  const auto v = full_test(kChordless4, {}, &trace);
  ASSERT_TRUE(v.is_tree());
  EXPECT_TRUE(v.tree().f_edges.empty());
  EXPECT_EQ(v.tree().f_prime_edges.size(), 2u);
  EXPECT_EQ(trace.f_prime_cycles.size(), 1u);
  EXPECT_TRUE(brute_pp(kChordless4));
  EXPECT_TRUE(verify_tree(v.tree().tree, kChordless4));
}

TEST(FullTest, LexicographicallySmallestWitness) {
  // characters 2,3 form a four-gamete pair; 0,1 are fine
  const auto m = CharacterMatrix::from_rows({{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 0, 1, 1}});
  EXPECT_EQ(full_test(m).witness().characters, (CharacterSubset{2, 3}));
  // a pair failure wins over a triple failure that sorts earlier
  const auto blocks = corpus::block_diagonal({kF3.rows(), {{0, 0}, {0, 1}, {1, 0}, {1, 1}}});
  EXPECT_EQ(full_test(blocks).witness().characters, (CharacterSubset{3, 4}));
}

TEST(FullTest, Errors) {
  EXPECT_THROW(full_test(CharacterMatrix::parse("a\nb\nc\nd")), error);
}

TEST(FullTest, AgreesWithOracle) {
  FullTestTrace trace;
  std::size_t trees = 0;
  for (const auto& m : corpus::mixed_corpus(17, 400)) {
    const auto v = full_test(m, {}, &trace);
    ASSERT_EQ(v.is_tree(), brute_pp(m)) << m.serialize();
    if (v.is_tree()) {
      ++trees;
      EXPECT_TRUE(verify_tree(v.tree().tree, m));
    } else {
      EXPECT_FALSE(full_test(restrict(m, v.witness().characters)).is_tree());
    }
  }
  EXPECT_TRUE(trace.violations.empty()) << trace.violations.front();
  EXPECT_GT(trees, 100u);
  EXPECT_LT(trees, 350u);
}

TEST(FullTest, InvariantUnderRelabeling) {
  std::mt19937 rng(5);
  for (const auto& m : corpus::mixed_corpus(23, 200)) {
    const std::size_t k = m.characters();
    std::vector<std::size_t> p(k);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::shuffle(p.begin(), p.end(), rng);
    std::vector<std::vector<int>> q(k);
    for (std::size_t c = 0; c < k; ++c) {
      q[c].resize(static_cast<std::size_t>(m.state_count(c)));
      std::iota(q[c].begin(), q[c].end(), 0);
      std::shuffle(q[c].begin(), q[c].end(), rng);
    }
    const auto v = full_test(m);
    const auto w = full_test(relabel(m, p, q));
    ASSERT_EQ(v.is_tree(), w.is_tree());
    if (!v.is_tree()) {
      // the relabeled witness maps back to a failing subset of the original
      std::vector<std::size_t> back;
      for (std::size_t c : w.witness().characters) back.push_back(p[c]);
      EXPECT_FALSE(full_test(restrict(m, CharacterSubset(back))).is_tree());
    }
    auto rows = m.rows();
    std::shuffle(rows.begin(), rows.end(), rng);
    EXPECT_EQ(full_test(CharacterMatrix::from_rows(rows)).is_tree(), v.is_tree());
  }
}

TEST(FullTest, RestrictionsOfTreesAreTrees) {
  for (const auto& m : corpus::mixed_corpus(29, 200)) {
    if (!full_test(m).is_tree()) continue;
    const std::size_t k = m.characters();
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<std::size_t> keep;
      for (std::size_t c = 0; c < k; ++c)
        if (mask >> c & 1) keep.push_back(c);
      EXPECT_TRUE(full_test(restrict(m, CharacterSubset(keep))).is_tree());
    }
  }
}

TEST(FullTest, ThreadCountDoesNotChangeResult) {
  for (const auto& m : corpus::mixed_corpus(41, 100)) {
    const auto a = full_test(m, {1});
    const auto b = full_test(m, {4});
    ASSERT_EQ(a.is_tree(), b.is_tree());
    if (a.is_tree()) {
      EXPECT_EQ(a.tree().f_edges, b.tree().f_edges);
      EXPECT_EQ(a.tree().f_prime_edges, b.tree().f_prime_edges);
    } else {
      EXPECT_EQ(a.witness().characters, b.witness().characters);
    }
  }
}

TEST(SeparatorCheck, Examples) {
  EXPECT_TRUE(separator_check(CharacterMatrix::parse("A\nA\nB")));
  EXPECT_FALSE(separator_check(CharacterMatrix::parse("0,0\n0,1\n1,0\n1,1")));
  EXPECT_FALSE(separator_check(CharacterMatrix::from_rows({{0, 0, 2}, {2, 0, 0}, {2, 1, 0}, {2, 1, 1}, {0, 2, 1}})));
  EXPECT_FALSE(separator_check(kF3));
  EXPECT_TRUE(separator_check(kChordless4));
  EXPECT_THROW(separator_check(CharacterMatrix::from_rows({{0, 0, 0, 0, 0, 0}, {1, 1, 1, 1, 1, 1}, {2, 2, 2, 2, 2, 2}})),
               error);
}

TEST(SeparatorCheck, AgreesWithFullTest) {
  std::size_t checked = 0;
  for (const auto& m : corpus::mixed_corpus(37, 300)) {
    if (build(m).size() > 15) continue;
    ++checked;
    EXPECT_EQ(separator_check(m), full_test(m).is_tree()) << m.serialize();
  }
  EXPECT_GT(checked, 200u);
}
