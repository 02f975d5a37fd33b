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


#ifndef SSP_SCHEMA_HPP_
#define SSP_SCHEMA_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ssp/document.hpp"

namespace ssp {

// Label used for topic annotations: <ENT=CLO_TY>...</ENT>.
inline constexpr std::string_view kTopicLabel = "ENT";

enum class PairType { kUnary, kBinary, kMultiple };
enum class Polarity { kNone, kPos, kNeg };

std::string_view pair_type_name(PairType type);
std::string_view polarity_name(Polarity polarity);

struct AspectDecl {
  std::string name;
  PairType type = PairType::kBinary;
  std::vector<std::string> values;
  // Intrinsic polarity of UNARY values, in declaration order.
  std::vector<std::pair<std::string, Polarity>> polarity;

  bool has_value(std::string_view value) const;
  bool operator==(const AspectDecl&) const = default;
};

struct TopicCategory {
  std::string code;
  std::string description;

  bool operator==(const TopicCategory&) const = default;
};

struct SchemaConfig {
  std::vector<AspectDecl> aspects;
  std::vector<TopicCategory> topics;

  const AspectDecl* find_aspect(std::string_view name) const;
  const TopicCategory* find_topic(std::string_view code) const;
  bool operator==(const SchemaConfig&) const = default;
};

// Line format:
//   ASPECT <name> <UNARY|BINARY|MULTIPLE> VALUES v1,v2 [POLARITY v=POS|NEG ...]
//   TOPIC <code> <description>
// Blank lines and `//` comments are ignored. Throws ParseError.
SchemaConfig parse_schema(std::string_view source);
SchemaConfig load_schema(const std::string& path);
std::string serialize_schema(const SchemaConfig& config);

// The five clothing-domain topics.
std::vector<TopicCategory> clothing_topics();

struct AspectValuePair {
  std::string aspect;
  std::string value;
  PairType type = PairType::kBinary;

  std::string label() const { return aspect + "-" + value; }
  bool operator==(const AspectValuePair&) const = default;
};

struct Rejection {
  std::string reason;
};

using LabelClass = std::variant<AspectValuePair, TopicCategory, Rejection>;

LabelClass validate_label(std::string_view label, const SchemaConfig& config);

// Checks an annotation as written in a graph output or a gold file:
// <ENT=topic> or <ASPECT-VALUE>. Returns the rejection reason, if any.
std::optional<std::string> check_annotation_label(const Annotation& annotation,
                                                  const SchemaConfig& config);

Polarity derive_sentiment(const AspectValuePair& pair,
                          const SchemaConfig& config);

struct EvaluationTriple {
  std::optional<TopicCategory> topic;
  std::string topic_surface;
  AspectValuePair aspect_value;
  std::string aspect_surface;
  Polarity sentiment = Polarity::kNone;
};

// One triple per aspect annotation, paired with the nearest preceding topic
// annotation of the document. Annotations with invalid labels are skipped.
std::vector<EvaluationTriple> extract_triples(const AnnotatedDoc& doc,
                                              const SchemaConfig& config);

// Text covered by tokens [start, end].
std::string span_text(const AnnotatedDoc& doc, std::size_t start,
                      std::size_t end);

// Reads inline-tagged text. Whitespace just inside a tag is moved outside
// the span. Throws ParseError (line 0) with the byte offset in the message.
AnnotatedDoc parse_annotated(std::string_view tagged);

// Stand-in for whitespace tokens in BIO output.
inline constexpr std::string_view kBoundaryPlaceholder = "␣";

// token<TAB>label lines followed by one blank line.
std::string export_bio(const AnnotatedDoc& doc);

}  // namespace ssp

#endif  // SSP_SCHEMA_HPP_
