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


#ifndef SSP_GRAPH_HPP_
#define SSP_GRAPH_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ssp/lexicon.hpp"

namespace ssp {

struct Atom {
  enum class Kind { kLiteral, kMask, kCall };

  Kind kind = Kind::kLiteral;
  std::string text;  // literal word, or the called graph's name
  LexicalMask mask;
  // Written directly after the previous atom (`기장<JN>`): no whitespace may
  // separate the two in matched text.
  bool glued = false;

  static Atom literal(std::string word, bool glued = false);
  static Atom lexical(LexicalMask mask, bool glued = false);
  static Atom call(std::string graph);

  bool is_epsilon() const {
    return kind == Kind::kMask &&
           mask.special == LexicalMask::Special::kEpsilon;
  }
  bool operator==(const Atom&) const = default;
};

using AtomSequence = std::vector<Atom>;

enum class BoxKind { kStart, kEnd, kContent };

struct Box {
  int id = 0;
  BoxKind kind = BoxKind::kContent;
  std::vector<AtomSequence> alternatives;
  // Emitted just before whatever the box matches.
  std::optional<std::string> output;

  bool operator==(const Box&) const = default;
};

struct Edge {
  int from = 0;
  int to = 0;

  bool operator==(const Edge&) const = default;
};

struct Graph {
  std::string name;
  std::vector<Box> boxes;
  std::vector<Edge> edges;

  const Box* box(int id) const;
  const Box& start() const;
  const Box& end() const;
  bool operator==(const Graph&) const = default;
};

struct GraphSet {
  std::string main;
  std::vector<Graph> graphs;  // declaration order

  const Graph* find(std::string_view name) const;
};

bool is_graph_name(std::string_view name);

// Parses one alternative of a box (escapes still in place).
AtomSequence parse_alternative(std::string_view text);
std::string serialize_alternative(const AtomSequence& atoms);

// Parses a source holding exactly one `#GRAPH` section.
Graph parse_graph(std::string_view source);
// Parses a source holding one or more `#GRAPH` sections.
std::vector<Graph> parse_graphs(std::string_view source);
std::string serialize_graph(const Graph& graph);

// Loads every `*.lgg` file of a directory in file-name order, or a single
// file. Throws ParseError / ValidationError.
GraphSet load_graph_set(const std::filesystem::path& path, std::string main);

struct Finding {
  enum class Kind { kMissingMain, kDanglingCall, kUnreachableBox, kDeadEndBox };

  Kind kind = Kind::kDanglingCall;
  std::string graph;
  int box = -1;
  std::string detail;

  std::string to_string() const;
};

struct ValidationReport {
  std::vector<Finding> findings;
  // (graph name, recursive) in declaration order.
  std::vector<std::pair<std::string, bool>> recursion;

  bool ok() const { return findings.empty(); }
  bool has_dangling() const;
  bool is_recursive(std::string_view graph) const;
  std::string to_string() const;
};

ValidationReport validate_graphset(const GraphSet& set);

// Graphviz description with nodes and edges in declaration order.
std::string emit_dot(const Graph& graph);

}  // namespace ssp

#endif  // SSP_GRAPH_HPP_
