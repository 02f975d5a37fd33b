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

#include "fixtures.hpp"
#include "oracle.hpp"
#include "ssp/error.hpp"
#include "ssp/schema.hpp"

namespace {

ssp::SchemaConfig demo_schema() { return ssp::load_schema(fixtures::path("data/demo/schema.cfg")); }

TEST(Schema, ParsesDemoConfig) {
  const ssp::SchemaConfig config = demo_schema();
  EXPECT_EQ(config.topics, ssp::clothing_topics());
  ASSERT_NE(config.find_aspect("WATERPROOF"), nullptr);
  EXPECT_EQ(config.find_aspect("WATERPROOF")->type, ssp::PairType::kUnary);
  EXPECT_EQ(config.find_aspect("COLOR")->type, ssp::PairType::kMultiple);
  EXPECT_TRUE(config.find_aspect("LENGTH")->has_value("SHORT"));
  EXPECT_FALSE(config.find_aspect("LENGTH")->has_value("BLACK"));
}

TEST(Schema, RejectsMalformedLines) {
  EXPECT_THROW(ssp::parse_schema("ASPECT X TERNARY VALUES A\n"), ssp::ParseError);
  EXPECT_THROW(ssp::parse_schema("ASPECT X BINARY\n"), ssp::ParseError);
  EXPECT_THROW(ssp::parse_schema("ASPECT X BINARY VALUES A POLARITY A=POS\n"),
               ssp::ParseError);
  EXPECT_THROW(ssp::parse_schema("ASPECT X UNARY VALUES A POLARITY B=POS\n"),
               ssp::ParseError);
  EXPECT_THROW(ssp::parse_schema("TOPIC\n"), ssp::ParseError);
  EXPECT_THROW(ssp::parse_schema("COLOR X\n"), ssp::ParseError);
  try {
    ssp::parse_schema("TOPIC A a\n\nASPECT X BINARY VALUES\n");
    FAIL();
  } catch (const ssp::ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Schema, ValidatesLabels) {
  const ssp::SchemaConfig config = demo_schema();
  const auto pair = ssp::validate_label("LENGTH-SHORT", config);
  ASSERT_TRUE(std::holds_alternative<ssp::AspectValuePair>(pair));
  EXPECT_EQ(std::get<ssp::AspectValuePair>(pair).type, ssp::PairType::kBinary);
  EXPECT_TRUE(std::holds_alternative<ssp::TopicCategory>(ssp::validate_label("CLO_BR", config)));
  EXPECT_TRUE(std::holds_alternative<ssp::Rejection>(ssp::validate_label("LENGTH-BLACK", config)));
  EXPECT_TRUE(std::holds_alternative<ssp::Rejection>(ssp::validate_label("SMELL-GOOD", config)));
  EXPECT_TRUE(std::holds_alternative<ssp::Rejection>(ssp::validate_label("CLO_XX", config)));

  EXPECT_FALSE(ssp::check_annotation_label({0, 0, "ENT", "CLO_TY"}, config));
  EXPECT_TRUE(ssp::check_annotation_label({0, 0, "ENT", "LENGTH"}, config));
  EXPECT_TRUE(ssp::check_annotation_label({0, 0, "ENT", ""}, config));
  EXPECT_FALSE(ssp::check_annotation_label({0, 0, "SIZE-GOOD", ""}, config));
  EXPECT_TRUE(ssp::check_annotation_label({0, 0, "SIZE-GOOD", "X"}, config));
}

TEST(Schema, SentimentComesFromUnaryValuesOnly) {
  const ssp::SchemaConfig config = demo_schema();
  EXPECT_EQ(ssp::derive_sentiment({"WATERPROOF", "GOOD", ssp::PairType::kUnary}, config),
            ssp::Polarity::kPos);
  EXPECT_EQ(ssp::derive_sentiment({"WATERPROOF", "BAD", ssp::PairType::kUnary}, config),
            ssp::Polarity::kNeg);
  EXPECT_EQ(ssp::derive_sentiment({"LENGTH", "SHORT", ssp::PairType::kBinary}, config),
            ssp::Polarity::kNone);
}

TEST(Schema, TriplesPairAspectsWithThePrecedingTopic) {
  const ssp::SchemaConfig config = demo_schema();
  const ssp::AnnotatedDoc doc = ssp::parse_annotated(
      "<LENGTH-GOOD>기장 좋아요</LENGTH-GOOD> <ENT=CLO_TY>자켓</ENT>은 "
      "<WATERPROOF-GOOD>방수가 잘 돼요</WATERPROOF-GOOD> <BAD-X>x</BAD-X>");
  const auto triples = ssp::extract_triples(doc, config);
  ASSERT_EQ(triples.size(), 2u);
  EXPECT_FALSE(triples[0].topic.has_value());
  EXPECT_EQ(triples[0].aspect_surface, "기장 좋아요");
  EXPECT_EQ(triples[1].topic->code, "CLO_TY");
  EXPECT_EQ(triples[1].topic_surface, "자켓");
  EXPECT_EQ(triples[1].aspect_value.label(), "WATERPROOF-GOOD");
  EXPECT_EQ(triples[1].sentiment, ssp::Polarity::kPos);
}

TEST(Schema, RoundTripsRandomConfigs) {
  oracle::Rng rng(51);
  EXPECT_EQ(ssp::parse_schema(ssp::serialize_schema(demo_schema())), demo_schema());
  for (int i = 0; i < 200; ++i) {
    const ssp::SchemaConfig config = oracle::random_schema(rng);
    ASSERT_EQ(ssp::parse_schema(ssp::serialize_schema(config)), config);
  }
}

TEST(Annotated, ParsesInlineTags) {
  const ssp::AnnotatedDoc doc =
      ssp::parse_annotated("<ENT=CLO_TY>티셔츠</ENT>는 <LENGTH-SHORT>기장이</LENGTH-SHORT>");
  EXPECT_EQ(doc.text, "티셔츠는 기장이");
  ASSERT_EQ(doc.annotations.size(), 2u);
  EXPECT_EQ(doc.annotations[0], (ssp::Annotation{0, 2, "ENT", "CLO_TY"}));
  EXPECT_EQ(doc.annotations[1], (ssp::Annotation{5, 7, "LENGTH-SHORT", ""}));
}

TEST(Annotated, MovesEdgeWhitespaceOutOfSpans) {
  const ssp::AnnotatedDoc doc = ssp::parse_annotated("가<X> 나 </X>다");
  EXPECT_EQ(doc.text, "가 나 다");
  EXPECT_EQ(doc.annotations, (std::vector<ssp::Annotation>{{2, 2, "X", ""}}));
  EXPECT_EQ(ssp::serialize_annotated(doc), "가 <X>나</X> 다");
}

TEST(Annotated, RejectsBrokenMarkup) {
  for (const char* bad : {"<X>가", "가</X>", "<X><Y>가</Y></X>", "<X>가<Y>나</X>다</Y>",
                          "<X></X>가", "<X> </X>가", "<X>가</Y>", "가<X>나"}) {
    EXPECT_THROW(ssp::parse_annotated(bad), ssp::ParseError) << bad;
  }
  // Tags must not cut a Latin word.
  EXPECT_THROW(ssp::parse_annotated("ab<X>cd</X>"), ssp::ParseError);
}

TEST(Annotated, ErrorsNameTheOffset) {
  try {
    ssp::parse_annotated("가나 </X>");
    FAIL();
  } catch (const ssp::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("offset 7"), std::string::npos) << e.what();
  }
}

TEST(Annotated, RoundTripsRandomDocuments) {
  oracle::Rng rng(53);
  for (int i = 0; i < 300; ++i) {
    const ssp::AnnotatedDoc doc = oracle::random_document(rng, 40);
    const std::string text = ssp::serialize_annotated(doc);
    ASSERT_EQ(ssp::parse_annotated(text), doc) << text;
    EXPECT_EQ(ssp::serialize_annotated(ssp::parse_annotated(text)), text);
  }
}

TEST(Bio, FirstGoldenSentence) {
  const std::string golden = fixtures::read("data/demo/golden.txt");
  const std::string first = golden.substr(0, golden.find('\n'));
  const std::string bio = ssp::export_bio(ssp::parse_annotated(first));
  EXPECT_EQ(bio.substr(0, bio.size() - 1), fixtures::read("data/fixtures/bio_first_sentence.tsv")
                                               .substr(0, bio.size() - 1));
  EXPECT_EQ(bio.substr(bio.size() - 2), "\n\n");
}

TEST(Bio, BoundariesAreOutside) {
  const std::string bio = ssp::export_bio(ssp::parse_annotated("<X>가 나</X> 다"));
  EXPECT_EQ(bio, "가\tB-X\n␣\tO\n나\tI-X\n␣\tO\n다\tO\n\n");
}

}  // namespace
