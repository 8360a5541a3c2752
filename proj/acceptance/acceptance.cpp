// Acceptance suite: one PASS/FAIL line per criterion. Pass --slow to add
// the r = 5 Fitch-Meacham run.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "phylo3/phylo3.hpp"
#include "phylo3/report.hpp"
#include "support/corpus.hpp"

using namespace phylo3;

namespace {

// Pinned sizes and seeds.
constexpr std::uint32_t kCorpusSeed = 20240601;
constexpr std::size_t kCorpusSize = 20000;
constexpr std::size_t kReportSize = 2000;  // prefix of the corpus rendered for criterion 9
constexpr std::uint32_t kBinarySeed = 11;
constexpr std::size_t kBinaryMatrices = 2000;
constexpr std::uint32_t kRemovalSeed = 907;
constexpr std::size_t kRemovalMatrices = 200;
constexpr std::size_t kRemovalBound = 4;
constexpr std::size_t kSeparatorVertices = 15;

struct Result {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void report_line(int id, const char* name, const Result& r, double seconds) {
  std::printf("[%s] criterion %d %s (%.2fs)%s%s\n", r.pass ? "PASS" : "FAIL", id, name, seconds,
              r.detail.empty() ? "" : ": ", r.detail.c_str());
  std::fflush(stdout);
  failures += !r.pass;
}

void run(int id, const char* name, const std::function<Result()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Result r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r.fail(std::string("exception: ") + e.what());
  }
  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  report_line(id, name, r, took.count());
}

bool four_gametes(const CharacterMatrix& m, std::size_t a, std::size_t b) {
  std::set<std::pair<int, int>> seen;
  for (std::size_t r = 0; r < m.taxa(); ++r) seen.insert({m.state(r, a), m.state(r, b)});
  return seen.size() == 4;
}

Result four_gamete_equivalence() {
  Result res;
  // every subset of the 16 binary rows on four characters, all six pairs
  std::vector<std::vector<int>> all;
  for (int x = 0; x < 16; ++x) all.push_back({x & 1, x >> 1 & 1, x >> 2 & 1, x >> 3 & 1});
  for (std::uint32_t mask = 1; mask < (1u << 16); ++mask) {
    std::vector<std::vector<int>> rows;
    for (int x = 0; x < 16; ++x)
      if (mask >> x & 1) rows.push_back(all[static_cast<std::size_t>(x)]);
    const auto m = CharacterMatrix::from_rows(rows);
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a + 1; b < 4; ++b)
        if (pair_test(m, a, b) == four_gametes(m, a, b))
          res.fail("row mask " + std::to_string(mask) + " pair " + std::to_string(a) + "," + std::to_string(b));
  }
  std::mt19937 rng(kBinarySeed);
  for (std::size_t i = 0; i < kBinaryMatrices; ++i) {
    const auto m = CharacterMatrix::from_rows(corpus::random_rows(rng, 1 + i % 10, 2 + i % 4, 2));
    for (std::size_t a = 0; a < m.characters(); ++a)
      for (std::size_t b = a + 1; b < m.characters(); ++b)
        if (pair_test(m, a, b) == four_gametes(m, a, b)) res.fail("random binary matrix " + std::to_string(i));
  }
  return res;
}

struct CorpusRun {
  std::vector<CharacterMatrix> matrices;
  std::vector<Verdict> verdicts;
  std::vector<bool> oracle;
  FullTestTrace trace;
  std::size_t trees = 0;
};

CorpusRun& corpus_run() {
  static CorpusRun c = [] {
    CorpusRun c;
    c.matrices = corpus::mixed_corpus(kCorpusSeed, kCorpusSize);
    for (const auto& m : c.matrices) {
      c.verdicts.push_back(full_test(m, {}, &c.trace));
      c.oracle.push_back(brute_pp(m));
      c.trees += c.verdicts.back().is_tree();
    }
    return c;
  }();
  return c;
}

Result agrees_with_oracle() {
  Result res;
  auto& c = corpus_run();
  for (std::size_t i = 0; i < c.matrices.size(); ++i)
    if (c.verdicts[i].is_tree() != c.oracle[i]) res.fail("disagreement on\n" + c.matrices[i].serialize());
  if (c.trees == 0 || c.trees == c.matrices.size()) res.fail("corpus is not mixed");
  res.detail += (res.detail.empty() ? "" : "; ") + std::to_string(c.matrices.size()) + " matrices, " +
                std::to_string(c.trees) + " trees";
  return res;
}

Result tree_soundness() {
  Result res;
  auto& c = corpus_run();
  for (std::size_t i = 0; i < c.matrices.size(); ++i) {
    if (!c.verdicts[i].is_tree()) continue;
    const auto check = verify_tree(c.verdicts[i].tree().tree, c.matrices[i]);
    if (!check) res.fail(check.violations.front());
  }
  return res;
}

Result fitch_meacham(bool slow) {
  Result res;
  const std::size_t top = slow ? 5 : 4;
  for (std::size_t r = 2; r <= top; ++r) {
    const auto m = generate_fm(r).matrix;
    if (brute_pp(m)) res.fail("oracle accepts F_" + std::to_string(r));
    if (r == 3 && full_test(m).is_tree()) res.fail("full_test accepts F_3");
    for (std::size_t drop = 0; drop < r; ++drop) {
      std::vector<std::size_t> keep;
      for (std::size_t c = 0; c < r; ++c)
        if (c != drop) keep.push_back(c);
      const auto sub = restrict(m, CharacterSubset(keep));
      // F_4 and F_5 use more than three states, so only the oracle applies
      const bool ok = r <= 3 ? full_test(sub).is_tree() && brute_pp(sub) : brute_pp(sub);
      if (!ok) res.fail("F_" + std::to_string(r) + " without character " + std::to_string(drop) + " rejected");
    }
  }
  return res;
}

Result obstruction_completeness() {
  Result res;
  auto& c = corpus_run();
  std::map<PatternKind, std::size_t> seen;
  for (const auto& v : c.verdicts) {
    if (v.is_tree()) continue;
    const auto kind = v.witness().pattern.kind;
    ++seen[kind];
    if (kind == PatternKind::unclassified) res.fail("unclassified witness");
  }
  std::string counts;
  for (auto [k, n] : seen) counts += (counts.empty() ? "" : ", ") + std::string(to_string(k)) + "=" + std::to_string(n);
  res.detail += (res.detail.empty() ? "" : "; ") + counts;
  return res;
}

Result separator_agreement() {
  Result res;
  auto& c = corpus_run();
  std::size_t checked = 0;
  for (std::size_t i = 0; i < c.matrices.size(); ++i) {
    if (build(c.matrices[i]).size() > kSeparatorVertices) continue;
    ++checked;
    if (separator_check(c.matrices[i], kSeparatorVertices) != c.verdicts[i].is_tree())
      res.fail("disagreement on\n" + c.matrices[i].serialize());
  }
  res.detail += (res.detail.empty() ? "" : "; ") + std::to_string(checked) + " instances";
  return res;
}

Result hitting_set_optimality() {
  Result res;
  std::mt19937 rng(kRemovalSeed);
  std::size_t done = 0;
  while (done < kRemovalMatrices) {
    const std::size_t n = 4 + done % 3, m = 3 + done % 3;
    const auto mat = CharacterMatrix::from_rows(corpus::random_rows(rng, n, m, 3));
    if (brute_pp(mat)) continue;
    const auto best = corpus::brute_removal_size(mat, kRemovalBound);
    if (!best) continue;
    ++done;
    const auto removed = character_removal(mat, kRemovalBound);
    if (!removed || removed->size() != *best) {
      res.fail("wrong removal size on\n" + mat.serialize());
      continue;
    }
    const auto keep = removed->complement(mat.characters());
    if (!keep.empty() && !full_test(restrict(mat, keep)).is_tree()) res.fail("removal leaves a conflict");
  }
  return res;
}

Result fill_loop_properties() {
  Result res;
  auto& c = corpus_run();
  for (const auto& v : c.trace.violations) res.fail(v);
  for (const auto& cycle : c.trace.f_prime_cycles) {
    std::set<std::size_t> colors;
    for (const auto& v : cycle) colors.insert(v.character);
    if (cycle.size() != 4 || colors.size() != 4) res.fail("F' fired on a cycle that is not four-colored");
  }
  for (const auto& v : c.verdicts) {
    if (!v.is_tree()) continue;
    const auto& g = v.tree().triangulation;
    if (!g.is_proper() || !is_chordal(g)) res.fail("filled graph not proper and chordal");
  }
  res.detail += (res.detail.empty() ? "" : "; ") + std::to_string(c.trace.triples_tested) + " triples, " +
                std::to_string(c.trace.f_prime_cycles.size()) + " F' firings";
  return res;
}

std::string suite_report(unsigned threads) {
  std::string out;
  for (const auto& m : corpus::mixed_corpus(kCorpusSeed, kReportSize)) {
    const auto text = m.serialize();
    const auto dig = report::digest(text);
    out += report::verdict("check", dig, full_test(m, {threads}), m).dump() + "\n";
    out += report::hypergraph("conflicts", dig, conflict_hypergraph(m, threads)).dump() + "\n";
    out += report::removal("remove", dig, 2, character_removal(m, 2, threads)).dump() + "\n";
  }
  for (std::size_t r = 2; r <= 4; ++r) out += report::fitch_meacham("gen-fm", generate_fm(r)).dump() + "\n";
  return out;
}

Result determinism() {
  Result res;
  const auto a = suite_report(1);
  const auto b = suite_report(1);
  const auto c = suite_report(4);
  if (a != b) res.fail("repeated run differs");
  if (a != c) res.fail("thread count changes output");
  res.detail += (res.detail.empty() ? "" : "; ") + std::string("digest ") + report::digest(a);
  return res;
}

}  // namespace

int main(int argc, char** argv) {
  bool slow = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--slow") == 0) slow = true;

  run(1, "four-gamete equivalence", four_gamete_equivalence);
  run(2, "full_test agrees with oracle", agrees_with_oracle);
  run(3, "every tree verdict verifies", tree_soundness);
  run(4, slow ? "Fitch-Meacham lower bound r=2..5" : "Fitch-Meacham lower bound r=2..4",
      [slow] { return fitch_meacham(slow); });
  run(5, "no unclassified witnesses", obstruction_completeness);
  run(6, "separator check agrees", separator_agreement);
  run(7, "character removal is optimal", hitting_set_optimality);
  run(8, "fill-loop properties hold", fill_loop_properties);
  run(9, "reports are byte-identical", determinism);

  std::printf("%d of 9 criteria failed\n", failures);
  return failures ? 1 : 0;
}
