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


#include "ssp/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "ssp/error.hpp"
#include "ssp/text.hpp"

namespace ssp {

namespace {

bool is_name_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '-';
}

// Reads a double-quoted string starting at s[pos] == '"', keeping escapes.
std::string read_quoted_raw(std::string_view s, std::size_t& pos, int line) {
  if (pos >= s.size() || s[pos] != '"') throw ParseError("expected '\"'", line);
  ++pos;
  std::string out;
  while (pos < s.size()) {
    const char c = s[pos];
    if (c == '\\' && pos + 1 < s.size()) {
      out.push_back(c);
      out.push_back(s[pos + 1]);
      pos += 2;
      continue;
    }
    if (c == '"') {
      ++pos;
      return out;
    }
    out.push_back(c);
    ++pos;
  }
  throw ParseError("unterminated quoted string", line);
}

std::string unescape(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) ++i;
    out.push_back(s[i]);
  }
  return out;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<std::string_view> split_alternatives(std::string_view raw) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '\\') {
      ++i;
    } else if (raw[i] == '|') {
      out.push_back(raw.substr(begin, i - begin));
      begin = i + 1;
    }
  }
  out.push_back(raw.substr(begin));
  return out;
}

void skip_spaces(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
}

std::string read_word(std::string_view s, std::size_t& pos) {
  const std::size_t begin = pos;
  while (pos < s.size() && s[pos] != ' ' && s[pos] != '\t') ++pos;
  return std::string(s.substr(begin, pos - begin));
}

int parse_id(const std::string& word, int line) {
  if (word.empty() || word.size() > 9 ||
      !std::all_of(word.begin(), word.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError("expected a box id, got '" + word + "'", line);
  }
  return std::stoi(word);
}

// `box_lines` / `edge_lines` give the source line of each box and edge.
void check_structure(const Graph& g, int section_line,
                     const std::vector<int>& box_lines,
                     const std::vector<int>& edge_lines) {
  int line = section_line;
  int starts = 0;
  int ends = 0;
  std::set<int> ids;
  for (std::size_t i = 0; i < g.boxes.size(); ++i) {
    const Box& box = g.boxes[i];
    if (!ids.insert(box.id).second) {
      line = box_lines[i];
      throw ParseError("graph " + g.name + ": duplicate box id " +
                           std::to_string(box.id),
                       line);
    }
    starts += box.kind == BoxKind::kStart;
    ends += box.kind == BoxKind::kEnd;
  }
  if (starts != 1 || ends != 1) {
    throw ParseError(
        "graph " + g.name + " needs exactly one start and one end box", line);
  }
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    line = edge_lines[i];
    const Box* from = g.box(e.from);
    const Box* to = g.box(e.to);
    if (from == nullptr || to == nullptr) {
      throw ParseError("graph " + g.name + ": edge " + std::to_string(e.from) +
                           " -> " + std::to_string(e.to) +
                           " references a missing box",
                       line);
    }
    if (from->kind == BoxKind::kEnd || to->kind == BoxKind::kStart) {
      throw ParseError("graph " + g.name + ": edge " + std::to_string(e.from) +
                           " -> " + std::to_string(e.to) +
                           " leaves the end box or enters the start box",
                       line);
    }
    if (!seen.insert({e.from, e.to}).second) {
      throw ParseError("graph " + g.name + ": duplicate edge " +
                           std::to_string(e.from) + " -> " +
                           std::to_string(e.to),
                       line);
    }
  }
}

std::string escape_literal(std::string_view word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const char c = word[i];
    if (c == '\\' || c == '"' || c == '|' || c == '<' || c == '>' ||
        (i == 0 && c == ':')) {
      out.push_back('\\');
    }
    out.push_back(c);
  }
  return out;
}

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

Atom Atom::literal(std::string word, bool glued) {
  Atom a;
  a.kind = Kind::kLiteral;
  a.text = std::move(word);
  a.glued = glued;
  return a;
}

Atom Atom::lexical(LexicalMask mask, bool glued) {
  Atom a;
  a.kind = Kind::kMask;
  a.mask = std::move(mask);
  a.glued = glued;
  return a;
}

Atom Atom::call(std::string graph) {
  Atom a;
  a.kind = Kind::kCall;
  a.text = std::move(graph);
  return a;
}

const Box* Graph::box(int id) const {
  for (const auto& b : boxes) {
    if (b.id == id) return &b;
  }
  return nullptr;
}

const Box& Graph::start() const {
  for (const auto& b : boxes) {
    if (b.kind == BoxKind::kStart) return b;
  }
  throw ValidationError("graph " + name + " has no start box");
}

const Box& Graph::end() const {
  for (const auto& b : boxes) {
    if (b.kind == BoxKind::kEnd) return b;
  }
  throw ValidationError("graph " + name + " has no end box");
}

const Graph* GraphSet::find(std::string_view name) const {
  for (const auto& g : graphs) {
    if (g.name == name) return &g;
  }
  return nullptr;
}

bool is_graph_name(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), is_name_char);
}

AtomSequence parse_alternative(std::string_view s) {
  AtomSequence atoms;
  std::size_t i = 0;
  bool space_before = true;
  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == '\t') {
      space_before = true;
      ++i;
      continue;
    }
    const bool glued = !space_before && !atoms.empty();
    space_before = false;
    if (c == '<') {
      const std::size_t close = s.find('>', i);
      if (close == std::string_view::npos) {
        throw ParseError("unterminated lexical mask in '" + std::string(s) + "'");
      }
      atoms.push_back(Atom::lexical(LexicalMask::parse(s.substr(i, close - i + 1)),
                                    glued));
      i = close + 1;
    } else if (c == ':' && !glued) {
      std::size_t j = i + 1;
      while (j < s.size() && is_name_char(s[j])) ++j;
      if (j == i + 1) {
        throw ParseError("empty subgraph name in '" + std::string(s) + "'");
      }
      if (j < s.size() && s[j] != ' ' && s[j] != '\t') {
        throw ParseError("invalid character after subgraph name in '" +
                         std::string(s) + "'");
      }
      atoms.push_back(Atom::call(std::string(s.substr(i + 1, j - i - 1))));
      i = j;
    } else if (c == '>') {
      throw ParseError("stray '>' in '" + std::string(s) + "'");
    } else {
      std::string word;
      while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '<') {
        if (s[i] == '>') throw ParseError("stray '>' in '" + std::string(s) + "'");
        if (s[i] == '\\' && i + 1 < s.size()) ++i;
        word.push_back(s[i]);
        ++i;
      }
      std::size_t p = 0;
      while (p < word.size()) {
        if (text::is_whitespace(text::next_code_point(word, p))) {
          throw ParseError("literal contains whitespace in '" + std::string(s) +
                           "'");
        }
      }
      atoms.push_back(Atom::literal(std::move(word), glued));
    }
  }
  if (atoms.empty()) throw ParseError("empty box alternative");
  return atoms;
}

std::string serialize_alternative(const AtomSequence& atoms) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Atom& a = atoms[i];
    if (i > 0 && !a.glued) out.push_back(' ');
    switch (a.kind) {
      case Atom::Kind::kLiteral:
        out += escape_literal(a.text);
        break;
      case Atom::Kind::kMask:
        out += a.mask.to_string();
        break;
      case Atom::Kind::kCall:
        out += ":" + a.text;
        break;
    }
  }
  return out;
}

std::vector<Graph> parse_graphs(std::string_view source) {
  const std::string normalized = text::nfc(source);
  std::vector<Graph> graphs;
  int section_line = 0;
  int line_no = 0;
  std::vector<int> box_lines;
  std::vector<int> edge_lines;
  const auto finish = [&]() {
    if (!graphs.empty()) {
      check_structure(graphs.back(), section_line, box_lines, edge_lines);
    }
    box_lines.clear();
    edge_lines.clear();
  };
  for (std::string_view raw : text::split(normalized, '\n')) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::string_view line = text::trim(raw);
    if (line.empty() || text::starts_with(line, "//")) continue;
    std::size_t pos = 0;
    const std::string keyword = read_word(line, pos);
    skip_spaces(line, pos);
    if (keyword == "#GRAPH") {
      finish();
      Graph g;
      g.name = read_word(line, pos);
      if (!is_graph_name(g.name)) {
        throw ParseError("invalid graph name '" + g.name + "'", line_no);
      }
      skip_spaces(line, pos);
      if (pos != line.size()) throw ParseError("trailing text after graph name", line_no);
      graphs.push_back(std::move(g));
      section_line = line_no;
      continue;
    }
    if (graphs.empty()) throw ParseError("expected #GRAPH first", line_no);
    Graph& g = graphs.back();
    if (keyword == "#BOX") {
      Box box;
      box.id = parse_id(read_word(line, pos), line_no);
      skip_spaces(line, pos);
      if (pos < line.size() && line[pos] == '"') {
        const std::string raw_alts = read_quoted_raw(line, pos, line_no);
        try {
          for (std::string_view alt : split_alternatives(raw_alts)) {
            box.alternatives.push_back(parse_alternative(alt));
          }
        } catch (const ParseError& e) {
          throw ParseError(e.detail(), line_no);
        }
        skip_spaces(line, pos);
        if (pos < line.size()) {
          if (read_word(line, pos) != "OUT") {
            throw ParseError("expected OUT after box contents", line_no);
          }
          skip_spaces(line, pos);
          box.output = unescape(read_quoted_raw(line, pos, line_no));
          if (box.output->empty()) throw ParseError("empty OUT text", line_no);
        }
      } else {
        const std::string kind = read_word(line, pos);
        if (kind == "start") {
          box.kind = BoxKind::kStart;
        } else if (kind == "end") {
          box.kind = BoxKind::kEnd;
        } else {
          throw ParseError("expected start, end or a quoted box", line_no);
        }
      }
      skip_spaces(line, pos);
      if (pos != line.size()) throw ParseError("trailing text on #BOX line", line_no);
      g.boxes.push_back(std::move(box));
      box_lines.push_back(line_no);
    } else if (keyword == "#EDGE") {
      Edge e;
      e.from = parse_id(read_word(line, pos), line_no);
      skip_spaces(line, pos);
      e.to = parse_id(read_word(line, pos), line_no);
      skip_spaces(line, pos);
      if (pos != line.size()) throw ParseError("trailing text on #EDGE line", line_no);
      g.edges.push_back(e);
      edge_lines.push_back(line_no);
    } else {
      throw ParseError("unknown directive '" + keyword + "'", line_no);
    }
  }
  finish();
  if (graphs.empty()) throw ParseError("no #GRAPH section");
  return graphs;
}

Graph parse_graph(std::string_view source) {
  auto graphs = parse_graphs(source);
  if (graphs.size() != 1) throw ParseError("expected exactly one graph");
  return std::move(graphs.front());
}

std::string serialize_graph(const Graph& graph) {
  std::string out = "#GRAPH " + graph.name + "\n";
  for (const auto& box : graph.boxes) {
    out += "#BOX " + std::to_string(box.id) + " ";
    switch (box.kind) {
      case BoxKind::kStart:
        out += "start";
        break;
      case BoxKind::kEnd:
        out += "end";
        break;
      case BoxKind::kContent: {
        std::string alts;
        for (std::size_t i = 0; i < box.alternatives.size(); ++i) {
          if (i > 0) alts.push_back('|');
          alts += serialize_alternative(box.alternatives[i]);
        }
        out += "\"" + alts + "\"";
        if (box.output) out += " OUT " + quote(*box.output);
        break;
      }
    }
    out += "\n";
  }
  for (const auto& e : graph.edges) {
    out += "#EDGE " + std::to_string(e.from) + " " + std::to_string(e.to) + "\n";
  }
  return out;
}

GraphSet load_graph_set(const std::filesystem::path& path, std::string main) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(path)) {
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".lgg") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
  } else if (std::filesystem::is_regular_file(path)) {
    files.push_back(path);
  } else {
    throw Error("graph path not found: " + path.string());
  }

  GraphSet set;
  set.main = std::move(main);
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error("cannot read " + file.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::vector<Graph> graphs;
    try {
      graphs = parse_graphs(buffer.str());
    } catch (const ParseError& e) {
      throw ParseError(file.filename().string() + ": " + e.what());
    }
    for (auto& g : graphs) {
      if (set.find(g.name) != nullptr) {
        throw ValidationError("graph '" + g.name + "' defined twice (" +
                              file.filename().string() + ")");
      }
      set.graphs.push_back(std::move(g));
    }
  }
  return set;
}

std::string Finding::to_string() const {
  std::string where = graph;
  if (box >= 0) where += " box " + std::to_string(box);
  switch (kind) {
    case Kind::kMissingMain:
      return "main graph '" + graph + "' is not defined";
    case Kind::kDanglingCall:
      return where + ": call to undefined graph '" + detail + "'";
    case Kind::kUnreachableBox:
      return where + ": unreachable from the start box";
    case Kind::kDeadEndBox:
      return where + ": the end box cannot be reached from here";
  }
  return where;
}

bool ValidationReport::has_dangling() const {
  return std::any_of(findings.begin(), findings.end(), [](const Finding& f) {
    return f.kind == Finding::Kind::kDanglingCall ||
           f.kind == Finding::Kind::kMissingMain;
  });
}

bool ValidationReport::is_recursive(std::string_view graph) const {
  for (const auto& [name, recursive] : recursion) {
    if (name == graph) return recursive;
  }
  return false;
}

std::string ValidationReport::to_string() const {
  std::string out;
  for (const auto& f : findings) out += "error: " + f.to_string() + "\n";
  for (const auto& [name, recursive] : recursion) {
    out += "graph " + name + ": " + (recursive ? "recursive" : "non-recursive") +
           "\n";
  }
  return out;
}

ValidationReport validate_graphset(const GraphSet& set) {
  ValidationReport report;
  if (set.find(set.main) == nullptr) {
    report.findings.push_back({Finding::Kind::kMissingMain, set.main, -1, {}});
  }

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < set.graphs.size(); ++i) index[set.graphs[i].name] = i;
  std::vector<std::vector<std::size_t>> calls(set.graphs.size());

  for (std::size_t gi = 0; gi < set.graphs.size(); ++gi) {
    const Graph& g = set.graphs[gi];
    for (const auto& box : g.boxes) {
      for (const auto& alt : box.alternatives) {
        for (const auto& atom : alt) {
          if (atom.kind != Atom::Kind::kCall) continue;
          auto it = index.find(atom.text);
          if (it == index.end()) {
            report.findings.push_back(
                {Finding::Kind::kDanglingCall, g.name, box.id, atom.text});
          } else {
            calls[gi].push_back(it->second);
          }
        }
      }
    }

    std::map<int, std::vector<int>> forward;
    std::map<int, std::vector<int>> backward;
    for (const auto& e : g.edges) {
      forward[e.from].push_back(e.to);
      backward[e.to].push_back(e.from);
    }
    const auto sweep = [](int from, std::map<int, std::vector<int>>& adj) {
      std::set<int> seen{from};
      std::deque<int> queue{from};
      while (!queue.empty()) {
        const int b = queue.front();
        queue.pop_front();
        for (int next : adj[b]) {
          if (seen.insert(next).second) queue.push_back(next);
        }
      }
      return seen;
    };
    const auto reachable = sweep(g.start().id, forward);
    const auto coreachable = sweep(g.end().id, backward);
    for (const auto& box : g.boxes) {
      if (!reachable.count(box.id)) {
        report.findings.push_back(
            {Finding::Kind::kUnreachableBox, g.name, box.id, {}});
      } else if (!coreachable.count(box.id)) {
        report.findings.push_back(
            {Finding::Kind::kDeadEndBox, g.name, box.id, {}});
      }
    }
  }

  // Tarjan's strongly connected components over the call graph.
  const std::size_t n = set.graphs.size();
  std::vector<int> order(n, -1);
  std::vector<int> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<bool> recursive(n, false);
  int counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    order[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : calls[v]) {
      if (order[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], order[w]);
      }
    }
    if (low[v] == order[v]) {
      std::vector<std::size_t> component;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component.push_back(w);
      } while (w != v);
      const bool self_call =
          std::find(calls[v].begin(), calls[v].end(), v) != calls[v].end();
      if (component.size() > 1 || self_call) {
        for (std::size_t c : component) recursive[c] = true;
      }
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (order[v] < 0) visit(v);
  }
  for (std::size_t v = 0; v < n; ++v) {
    report.recursion.emplace_back(set.graphs[v].name, recursive[v]);
  }
  return report;
}

std::string emit_dot(const Graph& graph) {
  std::string out = "digraph \"" + dot_escape(graph.name) + "\" {\n";
  out += "  rankdir=LR;\n  node [shape=box];\n";
  for (const auto& box : graph.boxes) {
    out += "  b" + std::to_string(box.id) + " [";
    switch (box.kind) {
      case BoxKind::kStart:
        out += "label=\"start\", shape=circle";
        break;
      case BoxKind::kEnd:
        out += "label=\"end\", shape=doublecircle";
        break;
      case BoxKind::kContent: {
        std::string label;
        for (std::size_t i = 0; i < box.alternatives.size(); ++i) {
          if (i > 0) label += "\\n";
          label += dot_escape(serialize_alternative(box.alternatives[i]));
        }
        out += "label=\"" + label + "\"";
        if (box.output) out += ", xlabel=\"" + dot_escape(*box.output) + "\"";
        break;
      }
    }
    out += "];\n";
  }
  for (const auto& e : graph.edges) {
    out += "  b" + std::to_string(e.from) + " -> b" + std::to_string(e.to) + ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace ssp
