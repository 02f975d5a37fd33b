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

#include <cmath>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "ssp/error.hpp"
#include "ssp/eval.hpp"
#include "ssp/schema.hpp"

namespace {

std::vector<ssp::AnnotatedDoc> load(const std::string& relative) {
  std::vector<ssp::AnnotatedDoc> docs;
  const std::string source = fixtures::read(relative);
  for (std::string_view line : ssp::text::split(source, '\n')) {
    if (!line.empty()) docs.push_back(ssp::parse_annotated(line));
  }
  return docs;
}

TEST(Counts, ZeroDenominatorsGiveZero) {
  const ssp::Counts none;
  EXPECT_EQ(none.precision(), 0);
  EXPECT_EQ(none.recall(), 0);
  EXPECT_EQ(none.f1(), 0);
  const ssp::Counts c{3, 1, 2};
  EXPECT_DOUBLE_EQ(c.precision(), 0.75);
  EXPECT_DOUBLE_EQ(c.recall(), 0.6);
  EXPECT_NEAR(c.f1(), 2.0 / 3.0, 1e-12);
}

TEST(Score, FixtureTotals) {
  const auto report = ssp::score(load("data/fixtures/eval_gold.txt"),
                                 load("data/fixtures/eval_pred.txt"));
  EXPECT_EQ(report.documents, 3u);
  EXPECT_EQ(report.total, (ssp::Counts{3, 1, 2}));
  EXPECT_EQ(report.per_label.at("DESIGN-GOOD"), (ssp::Counts{0, 1, 1}));
  EXPECT_EQ(report.per_label.at("ENT=CLO_TY"), (ssp::Counts{1, 0, 0}));
  const std::string table = ssp::format_table(report);
  EXPECT_NE(table.find("Recall  Precision  F1-Score"), std::string::npos);
  EXPECT_NE(table.find("0.6000"), std::string::npos);
  EXPECT_NE(table.find("0.7500"), std::string::npos);
  EXPECT_NE(table.find("0.6667"), std::string::npos);
  EXPECT_NE(ssp::format_key_values(report).find("true_positive=3"), std::string::npos);
}

TEST(Score, MismatchedTextsAreRejected) {
  try {
    ssp::score(load("data/fixtures/eval_gold.txt"), load("data/fixtures/eval_mismatch.txt"));
    FAIL();
  } catch (const ssp::Error& e) {
    EXPECT_NE(std::string(e.what()).find("document 2"), std::string::npos);
  }
  const auto gold = load("data/fixtures/eval_gold.txt");
  EXPECT_THROW(ssp::score(gold, std::span(gold).first(2)), ssp::Error);
}

TEST(Score, LabelAndBoundaryMustBothMatch) {
  const auto gold = ssp::parse_annotated("<A>가나</A> 다");
  EXPECT_EQ(ssp::score(std::vector{gold}, std::vector{ssp::parse_annotated("<B>가나</B> 다")}).total,
            (ssp::Counts{0, 1, 1}));
  EXPECT_EQ(ssp::score(std::vector{gold}, std::vector{ssp::parse_annotated("<A>가</A>나 다")}).total,
            (ssp::Counts{0, 1, 1}));
  EXPECT_EQ(ssp::score(std::vector{gold}, std::vector{gold}).total, (ssp::Counts{1, 0, 0}));
}

TEST(Score, AgreesWithBruteForceOnRandomCorpora) {
  oracle::Rng rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ssp::AnnotatedDoc> gold;
    std::vector<ssp::AnnotatedDoc> pred;
    const int docs = oracle::uniform(rng, 1, 8);
    for (int d = 0; d < docs; ++d) {
      gold.push_back(oracle::random_document(rng, 30));
      pred.push_back(oracle::perturb(rng, gold.back()));
    }
    const auto report = ssp::score(gold, pred);
    const oracle::OCounts expected = oracle::brute_force_score(gold, pred);
    ASSERT_EQ(report.total.true_positive, expected.tp);
    ASSERT_EQ(report.total.false_positive, expected.fp);
    ASSERT_EQ(report.total.false_negative, expected.fn);
    EXPECT_NEAR(report.total.precision(), expected.precision, 1e-12);
    EXPECT_NEAR(report.total.recall(), expected.recall, 1e-12);
    EXPECT_NEAR(report.total.f1(), expected.f1, 1e-12);
    ssp::Counts sum;
    for (const auto& [label, c] : report.per_label) sum += c;
    EXPECT_EQ(sum, report.total);
  }
}

}  // namespace
