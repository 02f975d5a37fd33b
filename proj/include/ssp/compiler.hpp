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


#ifndef SSP_COMPILER_HPP_
#define SSP_COMPILER_HPP_

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssp/graph.hpp"
#include "ssp/lexicon.hpp"

namespace ssp {

enum class ArcKind {
  kLiteral,  // consumes one token equal to `literal`
  kMask,     // consumes one or more tokens forming a surface accepted by masks[index]
  kCall,     // runs automaton `index`, then continues at `target`
  kFinal,    // accepts
  kEpsilon,  // only present while building; compiled automata have none
};

struct Arc {
  ArcKind kind = ArcKind::kFinal;
  std::string literal;
  int index = -1;
  int target = -1;
  // Emitted when the arc is taken, before anything it consumes.
  std::string output;
  // Whether whitespace may separate the consumed token from the previous one.
  bool soft = true;
  // Number of source graph paths this arc stands for. Epsilon removal keeps
  // one arc per target but several epsilon routes may lead to it; only path
  // counting reads this.
  std::uint64_t paths = 1;

  bool consumes() const {
    return kind == ArcKind::kLiteral || kind == ArcKind::kMask;
  }
  bool operator==(const Arc&) const = default;
};

// Arcs are kept in priority order: earlier arcs come from earlier-declared
// edges and alternatives.
struct State {
  std::vector<Arc> arcs;

  bool operator==(const State&) const = default;
};

struct Automaton {
  std::string name;
  std::vector<State> states;
  int initial = 0;

  bool operator==(const Automaton&) const = default;
};

// Recursive transition network: one automaton per graph.
struct Rtn {
  std::vector<Automaton> graphs;
  std::size_t main = 0;
  std::vector<LexicalMask> masks;

  const Automaton& main_graph() const { return graphs.at(main); }
  std::optional<std::size_t> find(std::string_view name) const;
  // Same network with `graph` as the entry point.
  Rtn rooted_at(std::size_t graph) const;
  bool operator==(const Rtn&) const = default;
};

// A single automaton without calls.
struct Fst {
  Automaton automaton;
  std::vector<LexicalMask> masks;
  // Calls dropped because they went deeper than the depth limit. Non-zero
  // means the automaton under-approximates the network.
  std::size_t pruned_calls = 0;

  Rtn as_rtn() const;
};

// Throws ValidationError when a call names an undefined graph or the main
// graph is missing.
Rtn compile(const GraphSet& set);

// Longest chain of nested calls below the main graph, or nullopt when a
// recursive graph is reachable from it.
std::optional<int> max_call_depth(const Rtn& rtn);

// Inlines calls up to `depth_limit` levels below the main graph. Throws
// Error when depth_limit is 0 (or negative) and a call is reachable.
Fst flatten(const Rtn& rtn, int depth_limit);

struct PathCount {
  bool infinite = false;
  boost::multiprecision::cpp_int value = 0;

  // "INFINITE" or the count with thousands separators.
  std::string to_string() const;
  bool operator==(const PathCount&) const = default;
};

// Number of accepting paths, each arc weighted by `paths`; a mask arc counts
// once no matter how many surfaces it covers. INFINITE iff a cycle is both reachable and
// co-reachable. Throws Error on call arcs.
PathCount count_paths(const Automaton& automaton);
inline PathCount count_paths(const Fst& fst) { return count_paths(fst.automaton); }

// Line-text dump, versioned by its first line.
std::string serialize_rtn(const Rtn& rtn);
// Throws ParseError.
Rtn deserialize_rtn(std::string_view source);

}  // namespace ssp

#endif  // SSP_COMPILER_HPP_
