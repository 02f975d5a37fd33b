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

#include <sstream>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "ssp/error.hpp"
#include "ssp/lexicon.hpp"

namespace {

ssp::Lexicon parse(const std::string& s) { return ssp::parse_lexicon(s); }

int parse_error_line(const std::string& s) {
  try {
    parse(s);
  } catch (const ssp::ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(Lexicon, ParsesEntriesAndCodes) {
  const auto lex = parse("#POS N\n#TAG CLO_TY\n티셔츠,INV.N+CLO_TY\n");
  ASSERT_EQ(lex.entries().size(), 1u);
  const auto& e = lex.entries()[0];
  EXPECT_EQ(e.lemma, "티셔츠");
  EXPECT_EQ(e.pos, "N");
  EXPECT_EQ(e.infl_class, "INV");
  EXPECT_EQ(e.tags, std::vector<std::string>{"CLO_TY"});
}

TEST(Lexicon, AcceptsPosFirstInvariableForm) {
  const std::string src = "#POS N\n#TAG CLO_TY\n자켓,N.INV+CLO_TY\n";
  const auto lex = parse(src);
  EXPECT_EQ(lex.entries()[0].pos, "N");
  EXPECT_EQ(lex.entries()[0].infl_class, "INV");
  EXPECT_EQ(ssp::serialize_lexicon(lex), src);
}

TEST(Lexicon, UndeclaredCodeReportsLine) {
  EXPECT_EQ(parse_error_line("#POS N\n\n짧다,P_A.A\n"), 3);
  EXPECT_EQ(parse_error_line("#POS N\n자켓,INV.N+CLO_TY\n"), 2);
}

TEST(Lexicon, RejectsMalformedLines) {
  EXPECT_EQ(parse_error_line("#POS N\n자켓\n"), 2);
  EXPECT_EQ(parse_error_line("#POS N\n자켓,INV\n"), 2);
  EXPECT_EQ(parse_error_line("#POS N\n#POS N\n"), 2);
  EXPECT_EQ(parse_error_line("#POS n\n"), 1);
  EXPECT_EQ(parse_error_line("#POS N\n자켓,INV.N\n자켓,INV.N\n"), 3);
  EXPECT_EQ(parse_error_line("#WHAT X\n"), 1);
}

TEST(Lexicon, EscapedLemmaRoundTrips) {
  const std::string src = "#POS N\na\\,b,INV.N\n\\#x,INV.N\n\\//y,INV.N\n";
  const auto lex = parse(src);
  EXPECT_EQ(lex.entries()[0].lemma, "a,b");
  EXPECT_EQ(lex.entries()[1].lemma, "#x");
  EXPECT_EQ(lex.entries()[2].lemma, "//y");
  EXPECT_EQ(ssp::serialize_lexicon(lex), src);
}

TEST(Lexicon, DemoFileRoundTripsByteForByte) {
  const std::string src = fixtures::read("data/demo/lexicon.dic");
  EXPECT_EQ(ssp::serialize_lexicon(parse(src)), src);
}

TEST(Lexicon, RandomRoundTrips) {
  oracle::Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const ssp::Lexicon lex = oracle::random_lexicon(rng);
    const std::string text = ssp::serialize_lexicon(lex);
    EXPECT_EQ(parse(text), lex) << text;
  }
}

TEST(Inflection, PastOfKeu) {
  const auto rules = ssp::parse_inflection_rules(
      "#PARADIGM P_EU PAST=었 ADN=ㄴ\n#VARIANT ㅡ+ㅓ=>ㅓ\n");
  const auto forms = ssp::inflect({"크다", "A", {}, "P_EU"}, rules);
  ASSERT_EQ(forms.size(), 2u);
  EXPECT_EQ(forms[0].surface, "컸");
  EXPECT_EQ(forms[0].suffix_info, "PAST");
  EXPECT_EQ(forms[1].surface, "큰");
}

TEST(Inflection, InvariableYieldsOneForm) {
  const auto forms = ssp::inflect({"자켓", "N", {"CLO_TY"}, "INV"}, {});
  ASSERT_EQ(forms.size(), 1u);
  EXPECT_EQ(forms[0].surface, "자켓");
  EXPECT_TRUE(forms[0].has_tag("CLO_TY"));
}

TEST(Inflection, UnknownClassFailsAtIndexTime) {
  auto lex = parse("#POS A\n크다,NOPE.A\n");
  EXPECT_THROW(ssp::build_index(lex, {}), ssp::ValidationError);
}

TEST(Inflection, RuleFilesRoundTrip) {
  const std::string src = fixtures::read("data/demo/rules.inf");
  EXPECT_EQ(ssp::serialize_inflection_rules(ssp::parse_inflection_rules(src)), src);
}

TEST(Inflection, RejectsBadRules) {
  EXPECT_THROW(ssp::parse_inflection_rules("#PARADIGM INV A=다\n"), ssp::ParseError);
  EXPECT_THROW(ssp::parse_inflection_rules("#PARADIGM P\n"), ssp::ParseError);
  EXPECT_THROW(ssp::parse_inflection_rules("#VARIANT ㅡㅓ\n"), ssp::ParseError);
  EXPECT_THROW(ssp::merge_rules(ssp::parse_inflection_rules("#PARADIGM P A=다\n"),
                                ssp::parse_inflection_rules("#PARADIGM P B=고\n")),
               ssp::ValidationError);
}

TEST(Inflection, DemoTableMatchesHandEnumeration) {
  const ssp::Lexicon lex = fixtures::demo_lexicon();
  std::istringstream table(fixtures::read("data/fixtures/forms.tsv"));
  std::string line;
  std::size_t rows = 0;
  while (std::getline(table, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string lemma, cell, surface;
    std::getline(fields, lemma, '\t');
    std::getline(fields, cell, '\t');
    std::getline(fields, surface, '\t');
    bool found = false;
    for (const auto& f : lex.lookup(surface)) {
      found = found || (f.lemma == lemma && f.suffix_info == cell);
    }
    EXPECT_TRUE(found) << lemma << " " << cell << " " << surface;
    ++rows;
  }
  std::size_t inflected = 0;
  for (const auto& f : lex.forms()) inflected += f.suffix_info != ssp::kBaseCell;
  EXPECT_EQ(rows, inflected);
}

TEST(Index, LookupAndPrefixMatches) {
  const ssp::Lexicon lex = fixtures::demo_lexicon();
  ASSERT_TRUE(lex.indexed());
  const auto forms = lex.lookup("기장");
  ASSERT_EQ(forms.size(), 1u);
  EXPECT_EQ(forms[0].lemma, "기장");
  EXPECT_TRUE(lex.lookup("없는말").empty());

  const std::string text = "티셔츠는";
  const auto matches = lex.prefix_matches(text, 0);
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(matches[0].end, std::string("티셔츠").size());

  // 셔츠 starts inside 티셔츠; a limit confines matches to the word.
  const auto inner = lex.prefix_matches(text, 3, 6);
  EXPECT_TRUE(inner.empty());
  EXPECT_EQ(lex.prefix_matches(text, 3).size(), 1u);
}

TEST(Index, PrefixMatchesAreShortestFirst) {
  auto lex = ssp::build_index(parse("#POS N\n색,INV.N\n색깔,INV.N\n색상,INV.N\n"), {});
  const std::string text = "색깔이";
  const auto m = lex.prefix_matches(text, 0);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_LT(m[0].end, m[1].end);
}

TEST(Masks, ParseAndPrint) {
  for (const std::string s : {"<N>", "<길다.A>", "<N+CLO_TY>", "<TOKEN>", "<E>", "<길다.A+X+Y>"}) {
    EXPECT_EQ(ssp::LexicalMask::parse(s).to_string(), s);
  }
  EXPECT_THROW(ssp::LexicalMask::parse("<>"), ssp::ParseError);
  EXPECT_THROW(ssp::LexicalMask::parse("<a b>"), ssp::ParseError);
  EXPECT_THROW(ssp::LexicalMask::parse("<x.a>"), ssp::ParseError);
}

TEST(Masks, ResolveAgainstAnalyses) {
  const ssp::Lexicon lex = fixtures::demo_lexicon();
  auto resolves = [&](const std::string& mask, const std::string& surface) {
    return ssp::resolve_mask(ssp::LexicalMask::parse(mask), lex.lookup(surface), lex);
  };
  EXPECT_TRUE(resolves("<A>", "짧네요"));
  EXPECT_TRUE(resolves("<짧다.A>", "짧네요"));
  EXPECT_TRUE(resolves("<짧다>", "짧네요"));
  EXPECT_FALSE(resolves("<길다.A>", "짧네요"));
  EXPECT_TRUE(resolves("<CLO_TY>", "자켓"));
  EXPECT_TRUE(resolves("<N+CLO_TY>", "자켓"));
  EXPECT_FALSE(resolves("<N+CLO_BR>", "자켓"));
  EXPECT_FALSE(resolves("<V>", "자켓"));
  EXPECT_TRUE(resolves("<크다.A>", "컸어요"));
  EXPECT_FALSE(resolves("<N>", "없는말"));
}

}  // namespace
