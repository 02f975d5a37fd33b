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


#ifndef SSP_TESTS_ORACLE_HPP_
#define SSP_TESTS_ORACLE_HPP_

// Independent reference implementations and random generators used by the
// unit tests and the acceptance suite. Nothing here calls the matcher,
// compiler or metric code it is compared against.

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ssp/compiler.hpp"
#include "ssp/document.hpp"
#include "ssp/graph.hpp"
#include "ssp/lexicon.hpp"
#include "ssp/schema.hpp"

namespace oracle {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi);  // inclusive
bool chance(Rng& rng, double p);

// Syllables used as the token alphabet of random grammars and texts.
const std::vector<std::string>& alphabet();

// ---------------------------------------------------------------------------
// Grammar language enumeration

// One token of an accepted sequence; `hard` forbids whitespace before it.
struct OToken {
  std::string text;
  bool hard = false;

  bool operator==(const OToken&) const = default;
};
using Sequence = std::vector<OToken>;

// Accepted token sequences of `graph`, in path-priority order (edges and
// alternatives in declaration order, depth first). Literal atoms are split
// per code point. Masks are not supported. Returns false when more than
// `limit` sequences would be produced.
bool enumerate_language(const ssp::GraphSet& set, const std::string& graph,
                        std::size_t limit, std::vector<Sequence>& out);

struct Family {
  std::string label;
  std::vector<Sequence> language;
};

struct OSpan {
  std::size_t start = 0;  // indices into the text's non-space tokens
  std::size_t end = 0;    // inclusive
  std::string label;

  bool operator==(const OSpan&) const = default;
};

// A text as the scanner sees it: tokens and whether whitespace preceded each.
struct OText {
  std::vector<std::string> tokens;
  std::vector<bool> spaced;

  std::string render() const;
  // Index of token i among all tokens including whitespace runs.
  std::size_t original_index(std::size_t i) const;
};

// Leftmost-longest greedy scan; ties go to the earliest sequence, families
// taken in order.
std::vector<OSpan> naive_annotate(const OText& text,
                                  const std::vector<Family>& families);

// ---------------------------------------------------------------------------
// Random grammars

struct RandomGrammarOptions {
  int max_boxes = 4;
  int max_alternatives = 3;
  int alphabet_size = 10;
  double epsilon_rate = 0.1;
};

// A graph with 1..max_boxes content boxes, acyclic, with every box on some
// start-to-end path. `callees` may be referenced by call atoms.
ssp::Graph random_graph(Rng& rng, const std::string& name,
                        const std::vector<std::string>& callees,
                        const RandomGrammarOptions& options);

// MAIN calls family graphs FA/FB wrapped in <LA>/<LB> tags; those may call
// leaf graphs, so calls nest at most two deep.
struct RandomGrammar {
  ssp::GraphSet set;
  std::vector<std::string> family_graphs;
  std::vector<std::string> labels;
};
RandomGrammar random_grammar(Rng& rng, const RandomGrammarOptions& options);

OText random_text(Rng& rng, std::size_t tokens, int alphabet_size,
                  double space_rate);

// ---------------------------------------------------------------------------
// Path counting

// Random automaton over literal arcs with forward-only transitions.
ssp::Automaton random_acyclic_automaton(Rng& rng, int max_states);

// Counts accepting arc paths by explicit depth-first enumeration; returns
// false once `limit` is exceeded.
bool dfs_count(const ssp::Automaton& a, std::uint64_t limit,
               std::uint64_t& count);

// Whether some cycle is both reachable from the initial state and able to
// reach acceptance (checked by brute force over state pairs).
bool has_live_cycle(const ssp::Automaton& a);

// Box-path enumeration over the graph structure with calls expanded.
std::uint64_t count_graph_paths(const ssp::GraphSet& set,
                                const std::string& graph);

// ---------------------------------------------------------------------------
// Metrics

struct OCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

OCounts brute_force_score(const std::vector<ssp::AnnotatedDoc>& gold,
                          const std::vector<ssp::AnnotatedDoc>& pred);

// Random document with random disjoint annotations.
ssp::AnnotatedDoc random_document(Rng& rng, int max_tokens);
// Copy of `doc` with annotations perturbed, dropped or added.
ssp::AnnotatedDoc perturb(Rng& rng, const ssp::AnnotatedDoc& doc);

// ---------------------------------------------------------------------------
// N-grams

std::map<std::string, std::size_t> recount_ngrams(
    const std::vector<ssp::AnnotatedDoc>& docs, int n);

// ---------------------------------------------------------------------------
// Random valid resources for round-trip checks

ssp::Lexicon random_lexicon(Rng& rng);
ssp::Graph random_resource_graph(Rng& rng);
ssp::SchemaConfig random_schema(Rng& rng);

}  // namespace oracle

#endif  // SSP_TESTS_ORACLE_HPP_
