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


#include "ssp/compiler.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "ssp/error.hpp"
#include "ssp/text.hpp"
#include "ssp/tokenizer.hpp"

namespace ssp {

namespace {

constexpr std::size_t kMaxFlatStates = 4'000'000;

int add_state(Automaton& a) {
  a.states.emplace_back();
  return static_cast<int>(a.states.size()) - 1;
}

Arc epsilon(int target, std::string output = {}, std::uint64_t paths = 1) {
  Arc arc;
  arc.kind = ArcKind::kEpsilon;
  arc.target = target;
  arc.output = std::move(output);
  arc.paths = paths;
  return arc;
}

std::uint64_t times(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("path multiplicity overflows 64 bits");
  return r;
}

std::uint64_t plus(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error("path multiplicity overflows 64 bits");
  return r;
}

struct Closure {
  std::set<int> visited;
  std::vector<int> postorder;
  // Emitted arc and the state it was copied from.
  std::vector<std::pair<Arc, int>> arcs;
};

// Depth-first, arc-order closure keeps the priority order of the original
// paths. Only the first epsilon path into a state supplies outputs.
void collect(const Automaton& in, int state, const std::string& prefix, Closure& c) {
  for (const Arc& arc : in.states[state].arcs) {
    if (arc.kind == ArcKind::kEpsilon) {
      if (c.visited.insert(arc.target).second) {
        collect(in, arc.target, prefix + arc.output, c);
      }
      continue;
    }
    Arc copy = arc;
    copy.output = prefix + arc.output;
    c.arcs.emplace_back(std::move(copy), state);
  }
  c.postorder.push_back(state);
}

// Arcs leaving `s` once epsilons are skipped. The number of epsilon routes
// from `s` to each state is counted over the closure's DFS order; routes
// around an epsilon cycle count once.
std::vector<Arc> close_state(const Automaton& in, int s) {
  Closure c;
  c.visited.insert(s);
  collect(in, s, {}, c);
  std::map<int, std::size_t> rank;
  for (std::size_t i = 0; i < c.postorder.size(); ++i) {
    rank[c.postorder[c.postorder.size() - 1 - i]] = i;
  }
  std::map<int, std::uint64_t> routes{{s, 1}};
  for (auto it = c.postorder.rbegin(); it != c.postorder.rend(); ++it) {
    const std::uint64_t here = routes[*it];
    for (const Arc& arc : in.states[*it].arcs) {
      if (arc.kind == ArcKind::kEpsilon && rank.at(arc.target) > rank.at(*it)) {
        routes[arc.target] = plus(routes[arc.target], times(here, arc.paths));
      }
    }
  }
  std::vector<Arc> out;
  out.reserve(c.arcs.size());
  for (auto& [arc, from] : c.arcs) {
    arc.paths = times(arc.paths, routes[from]);
    out.push_back(std::move(arc));
  }
  return out;
}

// Drops states unreachable from the initial state and renumbers the rest
// in breadth-first arc order.
Automaton trim(const Automaton& in) {
  std::vector<int> remap(in.states.size(), -1);
  std::vector<int> order;
  std::deque<int> queue{in.initial};
  remap[in.initial] = 0;
  order.push_back(in.initial);
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (const Arc& arc : in.states[s].arcs) {
      if (arc.target >= 0 && remap[arc.target] < 0) {
        remap[arc.target] = static_cast<int>(order.size());
        order.push_back(arc.target);
        queue.push_back(arc.target);
      }
    }
  }
  Automaton out;
  out.name = in.name;
  out.initial = 0;
  for (int s : order) {
    State state = in.states[s];
    for (Arc& arc : state.arcs) {
      if (arc.target >= 0) arc.target = remap[arc.target];
    }
    out.states.push_back(std::move(state));
  }
  return out;
}

Automaton remove_epsilons(const Automaton& in) {
  Automaton out;
  out.name = in.name;
  out.initial = in.initial;
  out.states.resize(in.states.size());
  for (std::size_t s = 0; s < in.states.size(); ++s) {
    out.states[s].arcs = close_state(in, static_cast<int>(s));
  }
  return trim(out);
}

class GraphCompiler {
 public:
  GraphCompiler(const GraphSet& set, std::vector<LexicalMask>& masks)
      : set_(set), masks_(masks) {}

  Automaton build(const Graph& graph) {
    Automaton a;
    a.name = graph.name;
    std::map<int, std::pair<int, int>> ports;  // box id -> (in, out)
    for (const Box& box : graph.boxes) {
      switch (box.kind) {
        case BoxKind::kStart: {
          const int s = add_state(a);
          a.initial = s;
          ports[box.id] = {s, s};
          break;
        }
        case BoxKind::kEnd: {
          const int s = add_state(a);
          a.states[s].arcs.push_back(Arc{});  // kFinal
          ports[box.id] = {s, s};
          break;
        }
        case BoxKind::kContent:
          ports[box.id] = {add_state(a), add_state(a)};
          break;
      }
    }
    for (const Box& box : graph.boxes) {
      if (box.kind != BoxKind::kContent) continue;
      const auto [in, out] = ports[box.id];
      for (const auto& alt : box.alternatives) {
        add_alternative(a, in, out, alt, box.output.value_or(""));
      }
    }
    for (const Edge& e : graph.edges) {
      a.states[ports[e.from].second].arcs.push_back(epsilon(ports[e.to].first));
    }
    return remove_epsilons(a);
  }

 private:
  int mask_index(const LexicalMask& mask) {
    for (std::size_t i = 0; i < masks_.size(); ++i) {
      if (masks_[i] == mask) return static_cast<int>(i);
    }
    masks_.push_back(mask);
    return static_cast<int>(masks_.size()) - 1;
  }

  void add_alternative(Automaton& a, int in, int out, const AtomSequence& alt,
                       const std::string& output) {
    std::vector<Arc> chain;
    for (const Atom& atom : alt) {
      switch (atom.kind) {
        case Atom::Kind::kLiteral: {
          bool first = true;
          for (const Token& token : tokenize_normalized(atom.text)) {
            Arc arc;
            arc.kind = ArcKind::kLiteral;
            arc.literal = token.text;
            arc.soft = first && !atom.glued;
            first = false;
            chain.push_back(std::move(arc));
          }
          break;
        }
        case Atom::Kind::kMask: {
          if (atom.is_epsilon()) break;
          Arc arc;
          arc.kind = ArcKind::kMask;
          arc.index = mask_index(atom.mask);
          arc.soft = !atom.glued;
          chain.push_back(std::move(arc));
          break;
        }
        case Atom::Kind::kCall: {
          const auto it = std::find_if(
              set_.graphs.begin(), set_.graphs.end(),
              [&](const Graph& g) { return g.name == atom.text; });
          Arc arc;
          arc.kind = ArcKind::kCall;
          arc.index = static_cast<int>(it - set_.graphs.begin());
          chain.push_back(std::move(arc));
          break;
        }
      }
    }
    if (chain.empty()) {
      a.states[in].arcs.push_back(epsilon(out, output));
      return;
    }
    chain.front().output = output;
    int from = in;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const int to = i + 1 == chain.size() ? out : add_state(a);
      chain[i].target = to;
      a.states[from].arcs.push_back(std::move(chain[i]));
      from = to;
    }
  }

  const GraphSet& set_;
  std::vector<LexicalMask>& masks_;
};

// Quoted string with \" \\ \n escapes.
std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

class LineReader {
 public:
  LineReader(std::string_view line, int line_no) : s_(line), line_no_(line_no) {}

  std::string word() {
    skip();
    const std::size_t begin = pos_;
    while (pos_ < s_.size() && s_[pos_] != ' ') ++pos_;
    if (begin == pos_) fail("missing field");
    return std::string(s_.substr(begin, pos_ - begin));
  }

  long number() {
    const std::string w = word();
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(w, &used);
    } catch (const std::exception&) {
      fail("expected a number, got '" + w + "'");
    }
    if (used != w.size()) fail("expected a number, got '" + w + "'");
    return v;
  }

  std::string quoted() {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != '"') fail("expected a quoted string");
    ++pos_;
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      char c = s_[pos_++];
      if (c == '\\') {
        if (pos_ >= s_.size()) fail("dangling escape");
        c = s_[pos_++];
        if (c == 'n') c = '\n';
      }
      out.push_back(c);
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }

  void done() {
    skip();
    if (pos_ != s_.size()) fail("trailing text");
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_no_);
  }

 private:
  void skip() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }

  std::string_view s_;
  int line_no_;
  std::size_t pos_ = 0;
};

}  // namespace

std::optional<std::size_t> Rtn::find(std::string_view name) const {
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (graphs[i].name == name) return i;
  }
  return std::nullopt;
}

Rtn Rtn::rooted_at(std::size_t graph) const {
  Rtn copy = *this;
  copy.main = graph;
  return copy;
}

Rtn Fst::as_rtn() const {
  Rtn rtn;
  rtn.graphs.push_back(automaton);
  rtn.masks = masks;
  return rtn;
}

Rtn compile(const GraphSet& set) {
  const ValidationReport report = validate_graphset(set);
  if (report.has_dangling()) {
    std::string message = "cannot compile graph set:";
    for (const auto& f : report.findings) {
      if (f.kind == Finding::Kind::kDanglingCall ||
          f.kind == Finding::Kind::kMissingMain) {
        message += "\n  " + f.to_string();
      }
    }
    throw ValidationError(message);
  }
  Rtn rtn;
  GraphCompiler compiler(set, rtn.masks);
  for (const Graph& g : set.graphs) rtn.graphs.push_back(compiler.build(g));
  rtn.main = *rtn.find(set.main);
  return rtn;
}

std::optional<int> max_call_depth(const Rtn& rtn) {
  // 0 = unvisited, 1 = on the current path, 2 = done.
  std::vector<int> color(rtn.graphs.size(), 0);
  std::vector<int> depth(rtn.graphs.size(), 0);
  bool cyclic = false;
  std::function<int(std::size_t)> visit = [&](std::size_t g) -> int {
    if (color[g] == 1) {
      cyclic = true;
      return 0;
    }
    if (color[g] == 2) return depth[g];
    color[g] = 1;
    int best = 0;
    for (const State& s : rtn.graphs[g].states) {
      for (const Arc& arc : s.arcs) {
        if (arc.kind == ArcKind::kCall) {
          best = std::max(best, 1 + visit(static_cast<std::size_t>(arc.index)));
        }
      }
    }
    color[g] = 2;
    depth[g] = best;
    return best;
  };
  const int d = visit(rtn.main);
  if (cyclic) return std::nullopt;
  return d;
}

Fst flatten(const Rtn& rtn, int depth_limit) {
  Fst fst;
  fst.masks = rtn.masks;
  if (depth_limit <= 0) {
    for (const State& s : rtn.main_graph().states) {
      for (const Arc& arc : s.arcs) {
        if (arc.kind == ArcKind::kCall) {
          throw Error("flatten: depth limit " + std::to_string(depth_limit) +
                      " but graph " + rtn.main_graph().name + " calls " +
                      rtn.graphs.at(arc.index).name);
        }
      }
    }
  }

  Automaton& out = fst.automaton;
  out.name = rtn.main_graph().name;
  std::function<int(std::size_t, int, int)> instantiate =
      [&](std::size_t g, int depth, int ret) -> int {
    const Automaton& source = rtn.graphs[g];
    const int base = static_cast<int>(out.states.size());
    out.states.resize(out.states.size() + source.states.size());
    if (out.states.size() > kMaxFlatStates) {
      throw Error("flatten: automaton exceeds " + std::to_string(kMaxFlatStates) +
                  " states");
    }
    for (std::size_t s = 0; s < source.states.size(); ++s) {
      const int from = base + static_cast<int>(s);
      for (const Arc& arc : source.states[s].arcs) {
        switch (arc.kind) {
          case ArcKind::kLiteral:
          case ArcKind::kMask: {
            Arc copy = arc;
            copy.target += base;
            out.states[from].arcs.push_back(std::move(copy));
            break;
          }
          case ArcKind::kFinal:
            out.states[from].arcs.push_back(
                ret < 0 ? arc : epsilon(ret, arc.output, arc.paths));
            break;
          case ArcKind::kCall: {
            if (depth + 1 > depth_limit) {
              ++fst.pruned_calls;
              break;
            }
            const int entry = instantiate(static_cast<std::size_t>(arc.index),
                                          depth + 1, base + arc.target);
            out.states[from].arcs.push_back(epsilon(entry, arc.output, arc.paths));
            break;
          }
          case ArcKind::kEpsilon:
            out.states[from].arcs.push_back(
                epsilon(base + arc.target, arc.output, arc.paths));
            break;
        }
      }
    }
    return base + source.initial;
  };
  out.initial = instantiate(rtn.main, 0, -1);
  out = remove_epsilons(out);
  return fst;
}

std::string PathCount::to_string() const {
  if (infinite) return "INFINITE";
  return text::group_thousands(value.str());
}

PathCount count_paths(const Automaton& a) {
  const std::size_t n = a.states.size();
  PathCount result;
  if (n == 0) return result;

  std::vector<std::vector<int>> reverse(n);
  std::vector<bool> accepting(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    for (const Arc& arc : a.states[s].arcs) {
      if (arc.kind == ArcKind::kCall) {
        throw Error("count_paths needs a flattened automaton");
      }
      if (arc.kind == ArcKind::kFinal) accepting[s] = true;
      if (arc.target >= 0) reverse[arc.target].push_back(static_cast<int>(s));
    }
  }
  std::vector<bool> reach(n, false);
  std::vector<bool> coreach(n, false);
  std::vector<int> stack{a.initial};
  reach[a.initial] = true;
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    for (const Arc& arc : a.states[s].arcs) {
      if (arc.target >= 0 && !reach[arc.target]) {
        reach[arc.target] = true;
        stack.push_back(arc.target);
      }
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (accepting[s]) {
      coreach[s] = true;
      stack.push_back(static_cast<int>(s));
    }
  }
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    for (int p : reverse[s]) {
      if (!coreach[p]) {
        coreach[p] = true;
        stack.push_back(p);
      }
    }
  }
  const auto live = [&](int s) { return reach[s] && coreach[s]; };
  if (!live(a.initial)) return result;

  // Kahn's algorithm over the live part; leftovers mean a live cycle.
  std::vector<int> indegree(n, 0);
  std::size_t live_count = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (!live(static_cast<int>(s))) continue;
    ++live_count;
    for (const Arc& arc : a.states[s].arcs) {
      if (arc.target >= 0 && live(arc.target)) ++indegree[arc.target];
    }
  }
  std::vector<int> order;
  for (std::size_t s = 0; s < n; ++s) {
    if (live(static_cast<int>(s)) && indegree[s] == 0) order.push_back(static_cast<int>(s));
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const Arc& arc : a.states[order[i]].arcs) {
      if (arc.target >= 0 && live(arc.target) && --indegree[arc.target] == 0) {
        order.push_back(arc.target);
      }
    }
  }
  if (order.size() != live_count) {
    result.infinite = true;
    return result;
  }
  std::vector<boost::multiprecision::cpp_int> paths(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto& total = paths[*it];
    for (const Arc& arc : a.states[*it].arcs) {
      if (arc.kind == ArcKind::kFinal) {
        total += arc.paths;
      } else if (live(arc.target)) {
        total += paths[arc.target] * arc.paths;
      }
    }
  }
  result.value = paths[a.initial];
  return result;
}

std::string serialize_rtn(const Rtn& rtn) {
  std::string out = "SSP-RTN 1\n";
  out += "MAIN " + std::to_string(rtn.main) + "\n";
  for (const auto& mask : rtn.masks) out += "MASK " + mask.to_string() + "\n";
  for (const Automaton& a : rtn.graphs) {
    out += "GRAPH " + a.name + " " + std::to_string(a.states.size()) + " " +
           std::to_string(a.initial) + "\n";
    for (std::size_t s = 0; s < a.states.size(); ++s) {
      for (const Arc& arc : a.states[s].arcs) {
        out += "ARC " + std::to_string(s) + " ";
        switch (arc.kind) {
          case ArcKind::kLiteral:
            out += "L " + std::to_string(arc.soft) + " " +
                   std::to_string(arc.target) + " " + quote(arc.literal);
            break;
          case ArcKind::kMask:
            out += "M " + std::to_string(arc.soft) + " " +
                   std::to_string(arc.target) + " " + std::to_string(arc.index);
            break;
          case ArcKind::kCall:
            out += "C " + std::to_string(arc.target) + " " +
                   std::to_string(arc.index);
            break;
          case ArcKind::kFinal:
            out += "F";
            break;
          case ArcKind::kEpsilon:
            throw Error("serialize_rtn: epsilon arc in a compiled automaton");
        }
        out += " " + quote(arc.output);
        if (arc.paths != 1) out += " " + std::to_string(arc.paths);
        out += "\n";
      }
    }
  }
  out += "END\n";
  return out;
}

Rtn deserialize_rtn(std::string_view source) {
  Rtn rtn;
  int line_no = 0;
  bool header = false;
  bool ended = false;
  long main = -1;
  std::size_t pos = 0;
  while (pos < source.size()) {
    std::size_t eol = source.find('\n', pos);
    if (eol == std::string_view::npos) eol = source.size();
    const std::string_view line = source.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (ended) throw ParseError("text after END", line_no);
    if (!header) {
      if (line != "SSP-RTN 1") throw ParseError("not an SSP-RTN 1 artifact", line_no);
      header = true;
      continue;
    }
    LineReader r(line, line_no);
    const std::string keyword = r.word();
    if (keyword == "MAIN") {
      main = r.number();
    } else if (keyword == "MASK") {
      std::string rest = r.word();
      try {
        rtn.masks.push_back(LexicalMask::parse(rest));
      } catch (const ParseError& e) {
        throw ParseError(e.detail(), line_no);
      }
    } else if (keyword == "GRAPH") {
      Automaton a;
      a.name = r.word();
      const long states = r.number();
      a.initial = static_cast<int>(r.number());
      if (states <= 0 || a.initial < 0 || a.initial >= states) {
        r.fail("bad state count or initial state");
      }
      a.states.resize(static_cast<std::size_t>(states));
      rtn.graphs.push_back(std::move(a));
    } else if (keyword == "ARC") {
      if (rtn.graphs.empty()) r.fail("ARC before GRAPH");
      Automaton& a = rtn.graphs.back();
      const long s = r.number();
      if (s < 0 || s >= static_cast<long>(a.states.size())) r.fail("bad state");
      Arc arc;
      const std::string kind = r.word();
      if (kind == "L" || kind == "M") {
        arc.kind = kind == "L" ? ArcKind::kLiteral : ArcKind::kMask;
        arc.soft = r.number() != 0;
        arc.target = static_cast<int>(r.number());
        if (arc.kind == ArcKind::kLiteral) {
          arc.literal = r.quoted();
        } else {
          arc.index = static_cast<int>(r.number());
        }
      } else if (kind == "C") {
        arc.kind = ArcKind::kCall;
        arc.target = static_cast<int>(r.number());
        arc.index = static_cast<int>(r.number());
      } else if (kind == "F") {
        arc.kind = ArcKind::kFinal;
      } else {
        r.fail("unknown arc kind '" + kind + "'");
      }
      arc.output = r.quoted();
      if (!r.at_end()) {
        const long paths = r.number();
        if (paths < 2) r.fail("bad path multiplicity");
        arc.paths = static_cast<std::uint64_t>(paths);
      }
      if (arc.target >= static_cast<int>(a.states.size()) ||
          (arc.kind != ArcKind::kFinal && arc.target < 0)) {
        r.fail("arc target out of range");
      }
      a.states[s].arcs.push_back(std::move(arc));
    } else if (keyword == "END") {
      ended = true;
      continue;
    } else {
      r.fail("unknown record '" + keyword + "'");
    }
    r.done();
  }
  if (!ended) throw ParseError("missing END");
  if (main < 0 || main >= static_cast<long>(rtn.graphs.size())) {
    throw ParseError("MAIN index out of range");
  }
  rtn.main = static_cast<std::size_t>(main);
  for (const Automaton& a : rtn.graphs) {
    for (const State& s : a.states) {
      for (const Arc& arc : s.arcs) {
        if (arc.kind == ArcKind::kCall &&
            (arc.index < 0 || arc.index >= static_cast<int>(rtn.graphs.size()))) {
          throw ParseError("call to unknown automaton index");
        }
        if (arc.kind == ArcKind::kMask &&
            (arc.index < 0 || arc.index >= static_cast<int>(rtn.masks.size()))) {
          throw ParseError("unknown mask index");
        }
      }
    }
  }
  return rtn;
}

}  // namespace ssp
