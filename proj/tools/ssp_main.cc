// Copyright 2026 The SSP Annotator Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line driver: compile resources, annotate corpora, evaluate, and
// inspect grammars.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ssp/annotator.hpp"
#include "ssp/compiler.hpp"
#include "ssp/error.hpp"
#include "ssp/eval.hpp"
#include "ssp/graph.hpp"
#include "ssp/lexicon.hpp"
#include "ssp/schema.hpp"
#include "ssp/text.hpp"

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

struct Options {
  std::string lexicon;
  std::string rules;
  std::string graphs;
  std::string schema;
  std::string compiled;
  std::string main_graph = "MAIN";
  std::string in = "-";
  std::string out = "-";
  std::string gold;
  std::string graph;
  int workers = 1;
  int depth = -1;
  int n = 2;
  int top = 0;
};

// Output target that is either stdout or a file opened up front.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw ssp::Error("cannot write " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::stringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  return ssp::text::read_file(path);
}

std::vector<std::string> lines_of(const std::string& content) {
  std::vector<std::string> lines;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

void require(const std::string& value, const std::string& flag) {
  if (value.empty()) throw ssp::ValidationError(flag + " is required");
}

template <typename F>
auto with_file(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ssp::ParseError& e) {
    throw ssp::ParseError(path + ": " + e.what());
  } catch (const ssp::ValidationError& e) {
    throw ssp::ValidationError(path + ": " + e.what());
  }
}

ssp::Lexicon load_lexicon(const Options& o) {
  require(o.lexicon, "--lexicon");
  ssp::Lexicon lexicon = with_file(o.lexicon, [&] {
    return ssp::parse_lexicon(ssp::text::read_file(o.lexicon));
  });
  ssp::InflectionRules rules;
  if (!o.rules.empty()) {
    rules = with_file(o.rules, [&] {
      return ssp::parse_inflection_rules(ssp::text::read_file(o.rules));
    });
  }
  return ssp::build_index(std::move(lexicon), rules);
}

ssp::GraphSet load_graphs(const Options& o) {
  require(o.graphs, "--graphs");
  return ssp::load_graph_set(o.graphs, o.main_graph);
}

// Every open tag written in a box output, as an annotation skeleton.
std::vector<std::pair<std::string, ssp::Annotation>> output_tags(
    const ssp::GraphSet& set) {
  std::vector<std::pair<std::string, ssp::Annotation>> out;
  for (const auto& g : set.graphs) {
    for (const auto& box : g.boxes) {
      if (!box.output) continue;
      const std::string& s = *box.output;
      const std::string where = g.name + " box " + std::to_string(box.id);
      for (std::size_t pos = 0; pos < s.size();) {
        std::size_t end = 0;
        const auto tag = ssp::scan_tag(s, pos, end);
        if (!tag) {
          throw ssp::ValidationError(where + ": output \"" + s +
                                     "\" is not a sequence of tags");
        }
        if (!tag->closing) {
          ssp::Annotation a;
          a.label = tag->name;
          a.attribute = tag->value;
          out.emplace_back(where, std::move(a));
        }
        pos = end;
      }
    }
  }
  return out;
}

// Masks must name declared codes or known lemmas.
std::vector<std::string> mask_problems(const ssp::Rtn& rtn,
                                       const ssp::Lexicon& lexicon) {
  std::vector<std::string> problems;
  for (const auto& mask : rtn.masks) {
    if (mask.special != ssp::LexicalMask::Special::kNone) continue;
    const std::string m = mask.to_string();
    if (!mask.pos.empty()) {
      if (!lexicon.is_pos(mask.pos)) problems.push_back(m + ": unknown POS " + mask.pos);
      if (!lexicon.has_lemma(mask.head)) problems.push_back(m + ": unknown lemma " + mask.head);
    } else if (!lexicon.is_code(mask.head) && !lexicon.has_lemma(mask.head)) {
      problems.push_back(m + ": '" + mask.head + "' is neither a code nor a lemma");
    }
    for (const auto& tag : mask.tags) {
      if (!lexicon.is_tag(tag)) problems.push_back(m + ": unknown tag " + tag);
    }
  }
  return problems;
}

ssp::Rtn compile_checked(const Options& o, const ssp::Lexicon& lexicon) {
  const ssp::GraphSet set = load_graphs(o);
  const ssp::ValidationReport report = ssp::validate_graphset(set);
  if (!report.ok()) throw ssp::ValidationError(report.to_string());
  ssp::Rtn rtn = ssp::compile(set);
  std::string problems;
  for (const auto& p : mask_problems(rtn, lexicon)) problems += "\n  " + p;
  if (!o.schema.empty()) {
    const ssp::SchemaConfig schema = ssp::load_schema(o.schema);
    for (const auto& [where, a] : output_tags(set)) {
      if (auto reason = ssp::check_annotation_label(a, schema)) {
        problems += "\n  " + where + ": " + *reason;
      }
    }
  }
  if (!problems.empty()) throw ssp::ValidationError("invalid resources:" + problems);
  return rtn;
}

// The network to run: a compiled artifact if given, else the graphs.
ssp::Rtn load_network(const Options& o, const ssp::Lexicon& lexicon) {
  if (!o.compiled.empty()) {
    ssp::Rtn rtn = with_file(o.compiled, [&] {
      return ssp::deserialize_rtn(ssp::text::read_file(o.compiled));
    });
    std::string problems;
    for (const auto& p : mask_problems(rtn, lexicon)) problems += "\n  " + p;
    if (!problems.empty()) throw ssp::ValidationError("invalid resources:" + problems);
    return rtn;
  }
  return compile_checked(o, lexicon);
}

int cmd_compile(const Options& o) {
  const ssp::Lexicon lexicon = load_lexicon(o);
  const ssp::Rtn rtn = compile_checked(o, lexicon);
  Output out(o.out);
  out.stream() << ssp::serialize_rtn(rtn);
  std::size_t states = 0;
  for (const auto& g : rtn.graphs) states += g.states.size();
  std::cerr << "compiled " << rtn.graphs.size() << " graphs, " << states
            << " states, " << rtn.masks.size() << " masks, " << lexicon.forms().size()
            << " surface forms\n";
  return 0;
}

int cmd_annotate(const Options& o) {
  const ssp::Lexicon lexicon = load_lexicon(o);
  const ssp::Annotator annotator(load_network(o, lexicon), lexicon);
  std::ifstream file;
  if (!o.in.empty() && o.in != "-") {
    file.open(o.in, std::ios::binary);
    if (!file) throw ssp::Error("cannot read " + o.in);
  }
  std::istream& in = file.is_open() ? static_cast<std::istream&>(file) : std::cin;
  Output out(o.out);
  std::size_t failures = 0;
  ssp::annotate_corpus(in, annotator, o.workers, [&](const ssp::CorpusResult& r) {
    if (r.doc) {
      out.stream() << ssp::serialize_annotated(*r.doc) << '\n';
    } else {
      ++failures;
      std::cerr << "line " << r.line << ": " << r.error << '\n';
      out.stream() << r.source << '\n';
    }
  });
  return failures == 0 ? 0 : kExitRuntime;
}

std::vector<ssp::AnnotatedDoc> parse_corpus(const std::string& path) {
  std::vector<ssp::AnnotatedDoc> docs;
  const auto lines = lines_of(read_input(path));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      docs.push_back(ssp::parse_annotated(lines[i]));
    } catch (const ssp::ParseError& e) {
      throw ssp::ParseError(path + ": line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return docs;
}

int cmd_eval(const Options& o) {
  require(o.gold, "--gold");
  const auto gold = parse_corpus(o.gold);
  const auto pred = parse_corpus(o.in);
  ssp::EvalReport report;
  try {
    report = ssp::score(gold, pred);
  } catch (const ssp::Error& e) {
    throw ssp::ValidationError(e.what());
  }
  std::cout << ssp::format_table(report);
  if (!o.out.empty() && o.out != "-") {
    Output out(o.out);
    out.stream() << ssp::format_key_values(report);
  }
  return 0;
}

int cmd_count(const Options& o) {
  const ssp::GraphSet set = load_graphs(o);
  const ssp::ValidationReport report = ssp::validate_graphset(set);
  if (!report.ok()) throw ssp::ValidationError(report.to_string());
  const ssp::Rtn rtn = ssp::compile(set);
  Output out(o.out);
  std::ostream& os = out.stream();
  os << "# one pattern per arc path; a lexical mask counts once\n";
  std::size_t width = 5;
  for (const auto& g : rtn.graphs) width = std::max(width, g.name.size());
  for (std::size_t i = 0; i < rtn.graphs.size(); ++i) {
    const ssp::Rtn rooted = rtn.rooted_at(i);
    std::string name = rtn.graphs[i].name;
    name.resize(width + 2, ' ');
    const auto needed = ssp::max_call_depth(rooted);
    std::string note;
    ssp::PathCount count;
    if (!needed && o.depth < 0) {
      count.infinite = true;
      note = "  (recursive; pass --depth to bound)";
    } else {
      const int depth = o.depth >= 0 ? o.depth : *needed;
      if (depth == 0 && needed.value_or(1) == 0) {
        count = ssp::count_paths(rooted.main_graph());
      } else {
        const ssp::Fst fst = ssp::flatten(rooted, depth);
        count = ssp::count_paths(fst);
        if (fst.pruned_calls > 0) {
          note = "  (depth " + std::to_string(depth) + ", " +
                 std::to_string(fst.pruned_calls) + " calls pruned)";
        }
      }
    }
    os << name << count.to_string() << note << '\n';
  }
  return 0;
}

int cmd_export(const Options& o) {
  const auto docs = parse_corpus(o.in);
  if (!o.schema.empty()) {
    const ssp::SchemaConfig schema = ssp::load_schema(o.schema);
    for (std::size_t i = 0; i < docs.size(); ++i) {
      for (const auto& a : docs[i].annotations) {
        if (auto reason = ssp::check_annotation_label(a, schema)) {
          throw ssp::ValidationError("line " + std::to_string(i + 1) + ": " + *reason);
        }
      }
    }
  }
  Output out(o.out);
  for (const auto& d : docs) out.stream() << ssp::export_bio(d);
  return 0;
}

int cmd_suggest(const Options& o) {
  if (o.n < 1) throw ssp::ValidationError("-n must be at least 1");
  const ssp::Lexicon lexicon = load_lexicon(o);
  const ssp::Annotator annotator(load_network(o, lexicon), lexicon);
  ssp::NgramCounter counter(o.n);
  std::size_t failures = 0;
  const auto lines = lines_of(read_input(o.in));
  for (const auto& r : ssp::annotate_corpus(lines, annotator, o.workers)) {
    if (r.doc) {
      counter.add(*r.doc);
    } else {
      ++failures;
      std::cerr << "line " << r.line << ": " << r.error << '\n';
    }
  }
  Output out(o.out);
  const auto table = counter.table();
  const std::size_t limit = o.top > 0 ? std::min<std::size_t>(o.top, table.size()) : table.size();
  for (std::size_t i = 0; i < limit; ++i) {
    out.stream() << table[i].count << '\t' << table[i].ngram << '\n';
  }
  return failures == 0 ? 0 : kExitRuntime;
}

int cmd_dot(const Options& o) {
  const ssp::GraphSet set = load_graphs(o);
  Output out(o.out);
  bool found = false;
  for (const auto& g : set.graphs) {
    if (!o.graph.empty() && g.name != o.graph) continue;
    found = true;
    out.stream() << ssp::emit_dot(g);
  }
  if (!found) throw ssp::ValidationError("no graph named " + o.graph);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SSP annotation engine: local grammar graphs over a Korean lexicon"};
  app.require_subcommand(1);
  Options o;

  auto add_resources = [&](CLI::App* cmd, bool network) {
    cmd->add_option("--lexicon", o.lexicon, "Lexicon file");
    cmd->add_option("--rules", o.rules, "Inflection rule file");
    cmd->add_option("--graphs", o.graphs, "Graph file or directory of *.lgg files");
    cmd->add_option("--main", o.main_graph, "Entry graph")->capture_default_str();
    if (network) cmd->add_option("--compiled", o.compiled, "Compiled network from `compile`");
  };
  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--in", o.in, "Input file, - for stdin")->capture_default_str();
    cmd->add_option("--out", o.out, "Output file, - for stdout")->capture_default_str();
  };

  auto* compile = app.add_subcommand("compile", "Validate resources and write the compiled network");
  add_resources(compile, false);
  compile->add_option("--schema", o.schema, "Schema config used to check output tags");
  compile->add_option("--out", o.out, "Artifact path, - for stdout")->capture_default_str();

  auto* annotate = app.add_subcommand("annotate", "Annotate a corpus, one document per line");
  add_resources(annotate, true);
  add_io(annotate);
  annotate->add_option("--workers", o.workers, "Worker threads")->check(CLI::Range(1, 256));

  auto* eval = app.add_subcommand("eval", "Score predicted annotations against gold");
  eval->add_option("--gold", o.gold, "Gold annotated corpus");
  eval->add_option("--in", o.in, "Predicted annotated corpus")->capture_default_str();
  eval->add_option("--out", o.out, "Also write key=value metrics here");

  auto* count = app.add_subcommand("count", "Count recognized patterns per graph");
  count->add_option("--graphs", o.graphs, "Graph file or directory of *.lgg files");
  count->add_option("--main", o.main_graph, "Entry graph")->capture_default_str();
  count->add_option("--depth", o.depth, "Call depth to flatten to (default: full depth)");
  count->add_option("--out", o.out, "Output file, - for stdout")->capture_default_str();

  auto* exp = app.add_subcommand("export", "Write an annotated corpus as BIO lines");
  add_io(exp);
  exp->add_option("--schema", o.schema, "Schema config used to check labels");

  auto* suggest = app.add_subcommand("suggest", "Frequent n-grams left unannotated");
  add_resources(suggest, true);
  add_io(suggest);
  suggest->add_option("-n", o.n, "N-gram size")->capture_default_str();
  suggest->add_option("--top", o.top, "Print only the first N rows");
  suggest->add_option("--workers", o.workers, "Worker threads")->check(CLI::Range(1, 256));

  auto* dot = app.add_subcommand("dot", "Render graphs in Graphviz format");
  dot->add_option("--graphs", o.graphs, "Graph file or directory of *.lgg files");
  dot->add_option("--main", o.main_graph, "Entry graph")->capture_default_str();
  dot->add_option("--graph", o.graph, "Only this graph");
  dot->add_option("--out", o.out, "Output file, - for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*compile) return cmd_compile(o);
    if (*annotate) return cmd_annotate(o);
    if (*eval) return cmd_eval(o);
    if (*count) return cmd_count(o);
    if (*exp) return cmd_export(o);
    if (*suggest) return cmd_suggest(o);
    if (*dot) return cmd_dot(o);
  } catch (const ssp::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ssp::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ssp::AnnotationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
