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


#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "ssp/compiler.hpp"
#include "ssp/error.hpp"

namespace {

ssp::GraphSet single(const std::string& boxes_and_edges, const std::string& name = "MAIN") {
  ssp::GraphSet set;
  set.main = name;
  set.graphs = ssp::parse_graphs("#GRAPH " + name + "\n#BOX 0 start\n#BOX 1 end\n" +
                                 boxes_and_edges);
  return set;
}

ssp::GraphSet many(const std::string& source, const std::string& main = "MAIN") {
  ssp::GraphSet set;
  set.main = main;
  set.graphs = ssp::parse_graphs(source);
  return set;
}

// Token sequences of a call-free automaton up to `max_len` tokens.
std::set<std::vector<std::string>> sequences(const ssp::Automaton& a, std::size_t max_len) {
  std::set<std::vector<std::string>> out;
  std::vector<std::string> path;
  std::function<void(int)> walk = [&](int s) {
    for (const auto& arc : a.states[static_cast<std::size_t>(s)].arcs) {
      if (arc.kind == ssp::ArcKind::kFinal) {
        out.insert(path);
      } else if (arc.kind == ssp::ArcKind::kLiteral && path.size() < max_len) {
        path.push_back(arc.literal);
        walk(arc.target);
        path.pop_back();
      }
    }
  };
  if (!a.states.empty()) walk(a.initial);
  return out;
}

std::set<std::vector<std::string>> strip(const std::vector<oracle::Sequence>& lang,
                                         std::size_t max_len) {
  std::set<std::vector<std::string>> out;
  for (const auto& seq : lang) {
    if (seq.size() > max_len) continue;
    std::vector<std::string> t;
    for (const auto& tok : seq) t.push_back(tok.text);
    out.insert(t);
  }
  return out;
}

TEST(Compile, LiteralBecomesSyllableChain) {
  const ssp::Rtn rtn = ssp::compile(single("#BOX 2 \"기장\"\n#EDGE 0 2\n#EDGE 2 1\n"));
  EXPECT_EQ(sequences(rtn.main_graph(), 8),
            (std::set<std::vector<std::string>>{{"기", "장"}}));
  // The second syllable is glued to the first.
  const auto& first = rtn.main_graph().states[static_cast<std::size_t>(rtn.main_graph().initial)].arcs[0];
  EXPECT_TRUE(first.soft);
  EXPECT_FALSE(rtn.main_graph().states[static_cast<std::size_t>(first.target)].arcs[0].soft);
}

TEST(Compile, AlternativesAreUnion) {
  const ssp::Rtn rtn = ssp::compile(single("#BOX 2 \"기장|길이\"\n#EDGE 0 2\n#EDGE 2 1\n"));
  EXPECT_EQ(sequences(rtn.main_graph(), 8),
            (std::set<std::vector<std::string>>{{"기", "장"}, {"길", "이"}}));
}

TEST(Compile, CallBecomesOneCallArc) {
  const ssp::Rtn rtn = ssp::compile(many(
      "#GRAPH MAIN\n#BOX 0 start\n#BOX 1 end\n#BOX 2 \":SUB\"\n#EDGE 0 2\n#EDGE 2 1\n"
      "#GRAPH SUB\n#BOX 0 start\n#BOX 1 end\n#BOX 2 \"x\"\n#EDGE 0 2\n#EDGE 2 1\n"));
  const auto& arcs = rtn.main_graph().states[static_cast<std::size_t>(rtn.main_graph().initial)].arcs;
  ASSERT_EQ(arcs.size(), 1u);
  EXPECT_EQ(arcs[0].kind, ssp::ArcKind::kCall);
  EXPECT_EQ(rtn.graphs[static_cast<std::size_t>(arcs[0].index)].name, "SUB");
}

TEST(Compile, OutputsLandOnTheBoxEntry) {
  const ssp::Rtn rtn = ssp::compile(single(
      "#BOX 2 \"가\" OUT \"<A>\"\n#BOX 3 \"<E>\" OUT \"</A>\"\n#EDGE 0 2\n#EDGE 2 3\n#EDGE 3 1\n"));
  const auto& a = rtn.main_graph();
  const auto& first = a.states[static_cast<std::size_t>(a.initial)].arcs.at(0);
  EXPECT_EQ(first.output, "<A>");
  const auto& last = a.states[static_cast<std::size_t>(first.target)].arcs.at(0);
  EXPECT_EQ(last.kind, ssp::ArcKind::kFinal);
  EXPECT_EQ(last.output, "</A>");
}

TEST(Compile, NoEpsilonArcsRemain) {
  oracle::Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto grammar = oracle::random_grammar(rng, {});
    for (const auto& g : ssp::compile(grammar.set).graphs) {
      for (const auto& s : g.states) {
        for (const auto& arc : s.arcs) EXPECT_NE(arc.kind, ssp::ArcKind::kEpsilon);
      }
    }
  }
}

TEST(Compile, DanglingCallIsRejected) {
  EXPECT_THROW(ssp::compile(single("#BOX 2 \":NOPE\"\n#EDGE 0 2\n#EDGE 2 1\n")),
               ssp::ValidationError);
  ssp::GraphSet no_main = single("#BOX 2 \"x\"\n#EDGE 0 2\n#EDGE 2 1\n");
  no_main.main = "OTHER";
  EXPECT_THROW(ssp::compile(no_main), ssp::ValidationError);
}

TEST(Flatten, PreservesLanguageOfRandomGrammars) {
  oracle::Rng rng(17);
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto grammar = oracle::random_grammar(rng, {});
    std::vector<oracle::Sequence> lang;
    if (!oracle::enumerate_language(grammar.set, "FA", 20000, lang)) continue;
    const ssp::Rtn rtn = ssp::compile(grammar.set).rooted_at(
        *ssp::compile(grammar.set).find("FA"));
    const ssp::Fst fst = ssp::flatten(rtn, 2);
    EXPECT_EQ(fst.pruned_calls, 0u);
    EXPECT_EQ(sequences(fst.automaton, 8), strip(lang, 8));
    ++compared;
  }
  EXPECT_GT(compared, 150);
}

TEST(Flatten, WithoutCallsIsIdentityUpToRenumbering) {
  const ssp::Rtn rtn = ssp::compile(single("#BOX 2 \"가|나다\"\n#BOX 3 \"라\"\n"
                                            "#EDGE 0 2\n#EDGE 2 3\n#EDGE 2 1\n#EDGE 3 1\n"));
  const ssp::Fst fst = ssp::flatten(rtn, 0);
  EXPECT_EQ(sequences(fst.automaton, 8), sequences(rtn.main_graph(), 8));
  EXPECT_EQ(fst.automaton.states.size(), rtn.main_graph().states.size());
}

TEST(Flatten, DepthZeroWithCallsFails) {
  const ssp::Rtn rtn = ssp::compile(fixtures::recursive_graphs());
  EXPECT_THROW(ssp::flatten(rtn, 0), ssp::Error);
}

TEST(Flatten, RecursionIsCutAtTheDepthLimit) {
  const ssp::Rtn rtn = ssp::compile(fixtures::recursive_graphs());
  EXPECT_EQ(ssp::max_call_depth(rtn), std::nullopt);
  const ssp::Fst fst = ssp::flatten(rtn, 2);
  EXPECT_GT(fst.pruned_calls, 0u);
  EXPECT_EQ(sequences(fst.automaton, 20),
            (std::set<std::vector<std::string>>{{"좋", "아", "요"},
                                                {"정", "말", "좋", "아", "요"},
                                                {"정", "말", "정", "말", "좋", "아", "요"}}));
}

TEST(Count, SmallExamples) {
  auto count = [](const std::string& body) {
    return ssp::count_paths(ssp::compile(single(body)).main_graph()).to_string();
  };
  EXPECT_EQ(count("#BOX 2 \"가 나 다\"\n#EDGE 0 2\n#EDGE 2 1\n"), "1");
  EXPECT_EQ(count("#BOX 2 \"가|나\"\n#BOX 3 \"다|라|마\"\n#EDGE 0 2\n#EDGE 2 3\n#EDGE 3 1\n"), "6");
  EXPECT_EQ(count("#BOX 2 \"<N>|<A>\"\n#EDGE 0 2\n#EDGE 2 1\n"), "2");
  EXPECT_EQ(count("#BOX 2 \"가\"\n#EDGE 0 2\n#EDGE 2 2\n#EDGE 2 1\n"), "INFINITE");
}

TEST(Count, MatchesDfsOnRandomAcyclicAutomata) {
  oracle::Rng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const ssp::Automaton a = oracle::random_acyclic_automaton(rng, 12);
    std::uint64_t expected = 0;
    ASSERT_TRUE(oracle::dfs_count(a, 1u << 20, expected));
    const ssp::PathCount got = ssp::count_paths(a);
    EXPECT_FALSE(got.infinite);
    EXPECT_EQ(got.value, expected);
  }
}

TEST(Count, InfiniteOnlyForLiveCycles) {
  oracle::Rng rng(29);
  for (int trial = 0; trial < 300; ++trial) {
    ssp::Automaton a = oracle::random_acyclic_automaton(rng, 8);
    // Add a random back arc.
    const int n = static_cast<int>(a.states.size());
    ssp::Arc back;
    back.kind = ssp::ArcKind::kLiteral;
    back.literal = "x";
    back.target = oracle::uniform(rng, 0, n - 1);
    a.states[static_cast<std::size_t>(oracle::uniform(rng, back.target, n - 1))].arcs.push_back(back);
    EXPECT_EQ(ssp::count_paths(a).infinite, oracle::has_live_cycle(a));
  }
}

TEST(Count, BigValuesUseExactArithmetic) {
  // 40 boxes with 3 alternatives each: 3^40 paths.
  std::string body;
  for (int i = 0; i < 40; ++i) {
    body += "#BOX " + std::to_string(i + 2) + " \"가|나|다\"\n";
  }
  body += "#EDGE 0 2\n";
  for (int i = 0; i < 39; ++i) {
    body += "#EDGE " + std::to_string(i + 2) + " " + std::to_string(i + 3) + "\n";
  }
  body += "#EDGE 41 1\n";
  const ssp::PathCount c = ssp::count_paths(ssp::compile(single(body)).main_graph());
  EXPECT_EQ(c.to_string(), "12,157,665,459,056,928,801");
}

TEST(Count, ParallelEpsilonRoutesCountSeparately) {
  const ssp::Rtn rtn = ssp::compile(single(
      "#BOX 2 \"<E>\"\n#BOX 3 \"<E>\"\n#BOX 4 \"가\"\n"
      "#EDGE 0 2\n#EDGE 0 3\n#EDGE 2 4\n#EDGE 3 4\n#EDGE 4 1\n"));
  EXPECT_EQ(ssp::count_paths(rtn.main_graph()).to_string(), "2");
  // The matcher still sees a single arc.
  EXPECT_EQ(rtn.main_graph().states[static_cast<std::size_t>(rtn.main_graph().initial)].arcs.size(), 1u);
  EXPECT_EQ(ssp::deserialize_rtn(ssp::serialize_rtn(rtn)), rtn);
}

TEST(Count, AgreesWithBoxPathEnumerationOnRandomGrammars) {
  oracle::Rng rng(37);
  oracle::RandomGrammarOptions options;
  options.epsilon_rate = 0.3;
  for (int trial = 0; trial < 200; ++trial) {
    const auto grammar = oracle::random_grammar(rng, options);
    const ssp::Rtn rtn = ssp::compile(grammar.set);
    for (std::size_t g = 0; g < rtn.graphs.size(); ++g) {
      const ssp::Rtn rooted = rtn.rooted_at(g);
      const ssp::PathCount c =
          ssp::count_paths(ssp::flatten(rooted, ssp::max_call_depth(rooted).value()));
      ASSERT_EQ(c.value, oracle::count_graph_paths(grammar.set, rtn.graphs[g].name))
          << ssp::serialize_graph(grammar.set.graphs[g]);
    }
  }
}

TEST(Count, CallsMustBeFlattenedFirst) {
  EXPECT_THROW(ssp::count_paths(ssp::compile(fixtures::demo_graphs()).main_graph()),
               ssp::Error);
}

TEST(Count, DemoFamiliesMatchBoxPathEnumeration) {
  const ssp::GraphSet set = fixtures::demo_graphs();
  const ssp::Rtn rtn = ssp::compile(set);
  for (std::size_t i = 0; i < rtn.graphs.size(); ++i) {
    const ssp::Rtn rooted = rtn.rooted_at(i);
    const int depth = ssp::max_call_depth(rooted).value();
    const ssp::PathCount c = ssp::count_paths(ssp::flatten(rooted, depth));
    EXPECT_EQ(c.value, oracle::count_graph_paths(set, rtn.graphs[i].name)) << rtn.graphs[i].name;
  }
}

TEST(Serialize, RoundTripAndDeterminism) {
  const ssp::Rtn rtn = ssp::compile(fixtures::demo_graphs());
  const std::string text = ssp::serialize_rtn(rtn);
  EXPECT_EQ(ssp::deserialize_rtn(text), rtn);
  EXPECT_EQ(ssp::serialize_rtn(ssp::compile(fixtures::demo_graphs())), text);

  oracle::Rng rng(31);
  for (int i = 0; i < 50; ++i) {
    const ssp::Rtn r = ssp::compile(oracle::random_grammar(rng, {}).set);
    EXPECT_EQ(ssp::deserialize_rtn(ssp::serialize_rtn(r)), r);
  }
}

TEST(Serialize, RejectsDamagedArtifacts) {
  const std::string text = ssp::serialize_rtn(ssp::compile(fixtures::demo_graphs()));
  EXPECT_THROW(ssp::deserialize_rtn(""), ssp::ParseError);
  EXPECT_THROW(ssp::deserialize_rtn("SSP-RTN 9\n"), ssp::ParseError);
  EXPECT_THROW(ssp::deserialize_rtn(text.substr(0, text.size() / 2)), ssp::ParseError);
}

}  // namespace
