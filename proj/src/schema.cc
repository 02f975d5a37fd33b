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


#include "ssp/schema.hpp"

#include <algorithm>

#include "ssp/error.hpp"
#include "ssp/text.hpp"
#include "ssp/tokenizer.hpp"

namespace ssp {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || s.front() < 'A' || s.front() > 'Z') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t from = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > from) out.push_back(s.substr(from, i - from));
  }
  return out;
}

std::optional<PairType> parse_pair_type(std::string_view s) {
  if (s == "UNARY") return PairType::kUnary;
  if (s == "BINARY") return PairType::kBinary;
  if (s == "MULTIPLE") return PairType::kMultiple;
  return std::nullopt;
}

AspectDecl parse_aspect(const std::vector<std::string_view>& w, int line) {
  if (w.size() < 5 || w[3] != "VALUES") {
    throw ParseError("expected ASPECT <name> <type> VALUES <v1,v2,...>", line);
  }
  AspectDecl decl;
  if (!is_identifier(w[1])) {
    throw ParseError("invalid aspect name '" + std::string(w[1]) + "'", line);
  }
  decl.name = std::string(w[1]);
  const auto type = parse_pair_type(w[2]);
  if (!type) {
    throw ParseError("unknown pair type '" + std::string(w[2]) + "'", line);
  }
  decl.type = *type;
  for (std::string_view v : text::split(w[4], ',')) {
    if (!is_identifier(v)) {
      throw ParseError("invalid value '" + std::string(v) + "'", line);
    }
    if (decl.has_value(v)) {
      throw ParseError("value '" + std::string(v) + "' listed twice", line);
    }
    decl.values.emplace_back(v);
  }
  std::size_t i = 5;
  if (i < w.size()) {
    if (w[i] != "POLARITY") {
      throw ParseError("unexpected '" + std::string(w[i]) + "'", line);
    }
    if (decl.type != PairType::kUnary) {
      throw ParseError("POLARITY is only allowed for UNARY aspects", line);
    }
    if (++i == w.size()) throw ParseError("POLARITY needs v=POS|NEG items", line);
    for (; i < w.size(); ++i) {
      const auto eq = w[i].find('=');
      const std::string_view value = w[i].substr(0, eq);
      const std::string_view pol =
          eq == std::string_view::npos ? std::string_view() : w[i].substr(eq + 1);
      if (!decl.has_value(value)) {
        throw ParseError("polarity for undeclared value '" + std::string(value) + "'", line);
      }
      if (pol != "POS" && pol != "NEG") {
        throw ParseError("polarity must be POS or NEG in '" + std::string(w[i]) + "'", line);
      }
      const bool dup = std::any_of(decl.polarity.begin(), decl.polarity.end(),
                                   [&](const auto& p) { return p.first == value; });
      if (dup) throw ParseError("polarity for '" + std::string(value) + "' given twice", line);
      decl.polarity.emplace_back(std::string(value),
                                 pol == "POS" ? Polarity::kPos : Polarity::kNeg);
    }
  }
  return decl;
}

}  // namespace

std::string_view pair_type_name(PairType type) {
  switch (type) {
    case PairType::kUnary: return "UNARY";
    case PairType::kBinary: return "BINARY";
    case PairType::kMultiple: return "MULTIPLE";
  }
  return "";
}

std::string_view polarity_name(Polarity polarity) {
  switch (polarity) {
    case Polarity::kNone: return "NONE";
    case Polarity::kPos: return "POS";
    case Polarity::kNeg: return "NEG";
  }
  return "";
}

bool AspectDecl::has_value(std::string_view value) const {
  return std::find(values.begin(), values.end(), value) != values.end();
}

const AspectDecl* SchemaConfig::find_aspect(std::string_view name) const {
  for (const auto& a : aspects) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

const TopicCategory* SchemaConfig::find_topic(std::string_view code) const {
  for (const auto& t : topics) {
    if (t.code == code) return &t;
  }
  return nullptr;
}

SchemaConfig parse_schema(std::string_view source) {
  SchemaConfig config;
  int line_no = 0;
  for (std::string_view raw : text::split(source, '\n')) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::string_view line = text::trim(raw);
    if (line.empty() || text::starts_with(line, "//")) continue;
    const auto w = words(line);
    if (w[0] == "ASPECT") {
      AspectDecl decl = parse_aspect(w, line_no);
      if (config.find_aspect(decl.name) != nullptr) {
        throw ParseError("aspect " + decl.name + " declared twice", line_no);
      }
      config.aspects.push_back(std::move(decl));
    } else if (w[0] == "TOPIC") {
      if (w.size() < 3) throw ParseError("expected TOPIC <code> <description>", line_no);
      if (!is_identifier(w[1])) {
        throw ParseError("invalid topic code '" + std::string(w[1]) + "'", line_no);
      }
      if (config.find_topic(w[1]) != nullptr) {
        throw ParseError("topic " + std::string(w[1]) + " declared twice", line_no);
      }
      const auto desc_at = static_cast<std::size_t>(w[2].data() - line.data());
      config.topics.push_back({std::string(w[1]), std::string(line.substr(desc_at))});
    } else {
      throw ParseError("unknown directive '" + std::string(w[0]) + "'", line_no);
    }
  }
  return config;
}

SchemaConfig load_schema(const std::string& path) {
  try {
    return parse_schema(text::read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string serialize_schema(const SchemaConfig& config) {
  std::string out;
  for (const auto& t : config.topics) {
    out += "TOPIC " + t.code + " " + t.description + "\n";
  }
  for (const auto& a : config.aspects) {
    out += "ASPECT " + a.name + " " + std::string(pair_type_name(a.type)) + " VALUES ";
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      if (i > 0) out += ',';
      out += a.values[i];
    }
    if (!a.polarity.empty()) {
      out += " POLARITY";
      for (const auto& [value, pol] : a.polarity) {
        out += " " + value + "=" + std::string(polarity_name(pol));
      }
    }
    out += '\n';
  }
  return out;
}

std::vector<TopicCategory> clothing_topics() {
  return {{"CLO_TY", "상품타입"},
          {"CLO_BR", "브랜드"},
          {"CLO_ST", "스토어"},
          {"CLO_SH", "쇼핑몰"},
          {"CLO_PA", "상품부분"}};
}

LabelClass validate_label(std::string_view label, const SchemaConfig& config) {
  if (const TopicCategory* t = config.find_topic(label)) return *t;
  const auto dash = label.find('-');
  if (dash == std::string_view::npos) {
    return Rejection{"'" + std::string(label) + "' is neither a topic nor ASPECT-VALUE"};
  }
  const std::string_view aspect = label.substr(0, dash);
  const std::string_view value = label.substr(dash + 1);
  const AspectDecl* decl = config.find_aspect(aspect);
  if (decl == nullptr) return Rejection{"unknown aspect '" + std::string(aspect) + "'"};
  if (!decl->has_value(value)) {
    return Rejection{"'" + std::string(value) + "' is not a value of " + decl->name};
  }
  return AspectValuePair{decl->name, std::string(value), decl->type};
}

std::optional<std::string> check_annotation_label(const Annotation& annotation,
                                                  const SchemaConfig& config) {
  if (annotation.label == kTopicLabel) {
    if (config.find_topic(annotation.attribute) == nullptr) {
      return "unknown topic '" + annotation.attribute + "' in " + annotation.open_tag();
    }
    return std::nullopt;
  }
  if (!annotation.attribute.empty()) {
    return "unexpected attribute in " + annotation.open_tag();
  }
  const LabelClass c = validate_label(annotation.label, config);
  if (const auto* r = std::get_if<Rejection>(&c)) return r->reason;
  if (std::holds_alternative<TopicCategory>(c)) {
    return "topic " + annotation.label + " must be written as <ENT=" +
           annotation.label + ">";
  }
  return std::nullopt;
}

Polarity derive_sentiment(const AspectValuePair& pair,
                          const SchemaConfig& config) {
  if (pair.type == PairType::kUnary) {
    if (const AspectDecl* decl = config.find_aspect(pair.aspect)) {
      for (const auto& [value, pol] : decl->polarity) {
        if (value == pair.value) return pol;
      }
    }
    return Polarity::kNone;
  }
  if (pair.value == "GOOD") return Polarity::kPos;
  if (pair.value == "BAD") return Polarity::kNeg;
  return Polarity::kNone;
}

std::string span_text(const AnnotatedDoc& doc, std::size_t start,
                      std::size_t end) {
  const Token& first = doc.tokens.at(start);
  const Token& last = doc.tokens.at(end);
  return doc.text.substr(first.offset, last.offset + last.length - first.offset);
}

std::vector<EvaluationTriple> extract_triples(const AnnotatedDoc& doc,
                                              const SchemaConfig& config) {
  std::vector<EvaluationTriple> out;
  const Annotation* topic = nullptr;
  for (const auto& a : doc.annotations) {
    if (a.label == kTopicLabel) {
      if (config.find_topic(a.attribute) != nullptr) topic = &a;
      continue;
    }
    if (!a.attribute.empty()) continue;
    const LabelClass c = validate_label(a.label, config);
    const auto* pair = std::get_if<AspectValuePair>(&c);
    if (pair == nullptr) continue;
    EvaluationTriple t;
    if (topic != nullptr) {
      t.topic = *config.find_topic(topic->attribute);
      t.topic_surface = span_text(doc, topic->start, topic->end);
    }
    t.aspect_value = *pair;
    t.aspect_surface = span_text(doc, a.start, a.end);
    t.sentiment = derive_sentiment(*pair, config);
    out.push_back(std::move(t));
  }
  return out;
}

AnnotatedDoc parse_annotated(std::string_view tagged) {
  struct Event {
    Tag tag;
    std::size_t source_offset;
    std::size_t text_offset;  // in the stripped, normalized text
  };
  std::vector<Event> events;
  std::string text;
  std::string whole;  // stripped but not segment-normalized
  std::size_t segment_start = 0;
  auto flush = [&](std::size_t to) {
    const std::string_view segment = tagged.substr(segment_start, to - segment_start);
    text += text::nfc(segment);
    whole += segment;
  };
  for (std::size_t pos = 0; pos < tagged.size();) {
    std::size_t end = 0;
    if (tagged[pos] == '<') {
      if (auto tag = scan_tag(tagged, pos, end)) {
        flush(pos);
        events.push_back({std::move(*tag), pos, text.size()});
        segment_start = pos = end;
        continue;
      }
    }
    ++pos;
  }
  flush(tagged.size());
  if (text != text::nfc(whole)) {
    throw ParseError("a tag splits a composed character");
  }

  AnnotatedDoc doc;
  doc.text = std::move(text);
  doc.tokens = tokenize_normalized(doc.text);
  auto token_starting_at = [&](std::size_t offset) -> std::optional<std::size_t> {
    auto it = std::lower_bound(doc.tokens.begin(), doc.tokens.end(), offset,
                               [](const Token& t, std::size_t o) { return t.offset < o; });
    if (it == doc.tokens.end() || it->offset != offset) return std::nullopt;
    return static_cast<std::size_t>(it - doc.tokens.begin());
  };
  auto at = [](const Event& e) { return " at offset " + std::to_string(e.source_offset); };

  const Event* open = nullptr;
  for (const Event& e : events) {
    if (!e.tag.closing) {
      if (open != nullptr) {
        throw ParseError("tag <" + e.tag.name + ">" + at(e) + " opens inside <" +
                         open->tag.name + ">; nested or crossing tags");
      }
      open = &e;
      continue;
    }
    if (open == nullptr) {
      throw ParseError("closing tag </" + e.tag.name + ">" + at(e) + " has no opening tag");
    }
    if (open->tag.name != e.tag.name) {
      throw ParseError("tag <" + open->tag.name + "> closed by </" + e.tag.name + ">" + at(e));
    }
    const auto first = token_starting_at(open->text_offset);
    const auto past = e.text_offset == doc.text.size()
                          ? std::optional<std::size_t>(doc.tokens.size())
                          : token_starting_at(e.text_offset);
    if (!first && open->text_offset < doc.text.size()) {
      throw ParseError("tag <" + open->tag.name + ">" + at(*open) + " falls inside a token");
    }
    if (!past) throw ParseError("tag </" + e.tag.name + ">" + at(e) + " falls inside a token");
    std::size_t s = first.value_or(doc.tokens.size());
    std::size_t t = *past;
    while (s < t && doc.tokens[s].is_boundary()) ++s;
    while (t > s && doc.tokens[t - 1].is_boundary()) --t;
    if (s >= t) throw ParseError("empty annotation <" + open->tag.name + ">" + at(*open));
    doc.annotations.push_back({s, t - 1, open->tag.name, open->tag.value});
    open = nullptr;
  }
  if (open != nullptr) {
    throw ParseError("tag <" + open->tag.name + ">" + at(*open) + " is never closed");
  }
  return doc;
}

std::string export_bio(const AnnotatedDoc& doc) {
  std::string out;
  std::size_t next = 0;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const Token& token = doc.tokens[i];
    while (next < doc.annotations.size() && doc.annotations[next].end < i) ++next;
    std::string label = "O";
    if (!token.is_boundary() && next < doc.annotations.size() &&
        doc.annotations[next].start <= i) {
      label = (doc.annotations[next].start == i ? "B-" : "I-") + doc.annotations[next].key();
    }
    out += token.is_boundary() ? std::string(kBoundaryPlaceholder) : token.text;
    out += '\t';
    out += label;
    out += '\n';
  }
  out += '\n';
  return out;
}

}  // namespace ssp
