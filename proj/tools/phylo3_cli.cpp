// phylo3 command line: decide, explain, and export perfect phylogenies.
//
// Exit codes: 0 = compatible / found, 1 = incompatible / not found,
// 2 = usage or data error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "phylo3/phylo3.hpp"
#include "phylo3/report.hpp"

namespace {

using phylo3::report::json;

struct Input {
  std::string path;
  std::string format = "csv";
  bool header = false;
  bool row_labels = false;
};

struct Outputs {
  std::string json_path;
  std::string dot_path;
  std::string newick_path;
  unsigned threads = 1;
};

std::string read_all(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw phylo3::error(phylo3::errc::empty_input, "cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void emit_json(const Outputs& o, const json& j) {
  if (!o.json_path.empty()) write_file(o.json_path, j.dump(2) + "\n");
}

std::string subset_string(const phylo3::CharacterSubset& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

void add_input(CLI::App* cmd, Input& in) {
  cmd->add_option("input", in.path, "matrix file, or - for stdin")->required();
  cmd->add_option("--format", in.format, "csv or ws")->check(CLI::IsMember({"csv", "ws"}));
  cmd->add_flag("--header", in.header, "first line holds character labels");
  cmd->add_flag("--labels", in.row_labels, "first column holds taxon labels");
}

struct Loaded {
  phylo3::CharacterMatrix matrix;
  std::string digest;
};

Loaded load(const Input& in) {
  const std::string text = read_all(in.path);
  phylo3::ParseOptions opts;
  opts.dialect = in.format == "ws" ? phylo3::Dialect::whitespace : phylo3::Dialect::csv;
  opts.header = in.header;
  opts.row_labels = in.row_labels;
  return {phylo3::CharacterMatrix::parse(text, opts), phylo3::report::digest(text)};
}

int run_check(const Input& in, const Outputs& o, const std::string& name) {
  const auto [matrix, digest] = load(in);
  const auto verdict = phylo3::full_test(matrix, {o.threads});
  emit_json(o, phylo3::report::verdict(name, digest, verdict, matrix));
  if (!o.dot_path.empty())
    write_file(o.dot_path, verdict.is_tree() ? verdict.tree().triangulation.to_dot() : phylo3::build(matrix).to_dot());

  if (verdict.is_tree()) {
    const auto& t = verdict.tree();
    std::cout << "perfect phylogeny: " << t.tree.nodes.size() << " nodes, " << t.f_edges.size() << " F edges, "
              << t.f_prime_edges.size() << " F' edges\n";
    if (!o.newick_path.empty()) write_file(o.newick_path, t.tree.to_newick(matrix) + "\n");
    return 0;
  }
  const auto& w = verdict.witness();
  std::cout << "no perfect phylogeny: characters " << subset_string(w.characters) << " ("
            << phylo3::to_string(w.detail.reason) << ", pattern " << phylo3::to_string(w.pattern.kind) << ")\n";
  if (!o.newick_path.empty()) std::cerr << "no tree to write: the matrix has no perfect phylogeny\n";
  return 1;
}

int run_conflicts(const Input& in, const Outputs& o) {
  const auto [matrix, digest] = load(in);
  const auto h = phylo3::conflict_hypergraph(matrix, o.threads);
  const json j = phylo3::report::hypergraph("conflicts", digest, h);
  emit_json(o, j);
  std::cout << j["edges2"].size() << " conflicting pairs, " << j["edges3"].size() << " conflicting triples\n";
  std::cout << "edges2 " << j["edges2"].dump() << "\nedges3 " << j["edges3"].dump() << "\n";
  return h.empty() ? 0 : 1;
}

int run_remove(const Input& in, const Outputs& o, std::size_t k) {
  const auto [matrix, digest] = load(in);
  const auto removed = phylo3::character_removal(matrix, k, o.threads);
  emit_json(o, phylo3::report::removal("remove", digest, k, removed));
  if (!removed) {
    std::cout << "more than " << k << " characters must be removed\n";
    return 1;
  }
  std::cout << "remove " << removed->size() << " characters: " << subset_string(*removed) << "\n";
  return 0;
}

int run_gen_fm(std::size_t r, const Outputs& o) {
  const auto fm = phylo3::generate_fm(r);
  emit_json(o, phylo3::report::fitch_meacham("gen-fm", fm));
  std::cout << fm.matrix.serialize();
  if (!o.dot_path.empty()) write_file(o.dot_path, phylo3::build(fm.matrix).to_dot());
  return 0;
}

int run_oracle(const Input& in, const Outputs& o) {
  const auto [matrix, digest] = load(in);
  const auto result = phylo3::oracle_search(matrix);
  emit_json(o, phylo3::report::oracle("oracle", digest, result));
  std::cout << (result.compatible ? "proper triangulation found" : "no proper triangulation") << " after "
            << result.nodes << " search nodes\n";
  return result.compatible ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perfect phylogeny for characters with at most three states"};
  app.require_subcommand(1);

  Input in;
  Outputs o;
  std::size_t k = 0;
  std::size_t r = 0;

  auto add_outputs = [&](CLI::App* cmd) {
    cmd->add_option("--json", o.json_path, "write the JSON report here (- for stdout)");
    cmd->add_option("--threads", o.threads, "worker threads for subset tests (0 = all cores)");
  };

  auto* check = app.add_subcommand("check", "decide and emit a tree or a witness");
  add_input(check, in);
  add_outputs(check);
  check->add_option("--dot", o.dot_path, "write the filled partition intersection graph as DOT");
  check->add_option("--newick", o.newick_path, "write the tree as Newick");

  auto* conflicts = app.add_subcommand("conflicts", "list conflicting pairs and minimal triples");
  add_input(conflicts, in);
  add_outputs(conflicts);

  auto* remove = app.add_subcommand("remove", "fewest characters whose removal leaves a compatible matrix");
  add_input(remove, in);
  add_outputs(remove);
  remove->add_option("--k", k, "largest removal to look for")->required();

  auto* gen = app.add_subcommand("gen-fm", "print the Fitch-Meacham matrix for r");
  gen->add_option("--r", r, "number of characters and states (>= 2)")->required();
  gen->add_option("--json", o.json_path, "write the JSON report here (- for stdout)");
  gen->add_option("--dot", o.dot_path, "write the partition intersection graph as DOT");

  auto* oracle = app.add_subcommand("oracle", "exhaustive triangulation search (small inputs)");
  add_input(oracle, in);
  add_outputs(oracle);

  auto* exp = app.add_subcommand("export", "write DOT and/or Newick for a matrix");
  add_input(exp, in);
  add_outputs(exp);
  exp->add_option("--dot", o.dot_path, "DOT output path");
  exp->add_option("--newick", o.newick_path, "Newick output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return run_check(in, o, "check");
    if (*conflicts) return run_conflicts(in, o);
    if (*remove) return run_remove(in, o, k);
    if (*gen) return run_gen_fm(r, o);
    if (*oracle) return run_oracle(in, o);
    if (*exp) return run_check(in, o, "export");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
