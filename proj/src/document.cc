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


#include "ssp/document.hpp"

#include <algorithm>

#include "ssp/error.hpp"
#include "ssp/text.hpp"

namespace ssp {

std::string Annotation::open_tag() const {
  return attribute.empty() ? "<" + label + ">"
                           : "<" + label + "=" + attribute + ">";
}

std::string Annotation::close_tag() const { return "</" + label + ">"; }

std::string Annotation::key() const {
  return attribute.empty() ? label : label + "=" + attribute;
}

AnnotatedDoc make_document(std::string_view text) {
  AnnotatedDoc doc;
  doc.text = text::nfc(text);
  doc.tokens = tokenize_normalized(doc.text);
  return doc;
}

void check_annotations(const AnnotatedDoc& doc) {
  for (std::size_t i = 0; i < doc.annotations.size(); ++i) {
    const Annotation& a = doc.annotations[i];
    if (a.start > a.end || a.end >= doc.tokens.size()) {
      throw AnnotationError("annotation " + a.key() + " is out of range");
    }
    if (doc.tokens[a.start].is_boundary() || doc.tokens[a.end].is_boundary()) {
      throw AnnotationError("annotation " + a.key() +
                            " starts or ends on whitespace");
    }
    if (!is_tag_name(a.label) ||
        (!a.attribute.empty() && !is_tag_name(a.attribute))) {
      throw AnnotationError("invalid annotation label '" + a.key() + "'");
    }
    if (i > 0 && doc.annotations[i - 1].end >= a.start) {
      throw AnnotationError("annotations " + doc.annotations[i - 1].key() +
                            " and " + a.key() + " overlap or are unsorted");
    }
  }
}

std::string serialize_annotated(const AnnotatedDoc& doc) {
  std::string out;
  out.reserve(doc.text.size() + doc.annotations.size() * 24);
  std::size_t next = 0;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const bool opens = next < doc.annotations.size() &&
                       doc.annotations[next].start == i;
    if (opens) out += doc.annotations[next].open_tag();
    out += doc.tokens[i].text;
    if (next < doc.annotations.size() && doc.annotations[next].end == i) {
      out += doc.annotations[next].close_tag();
      ++next;
    }
  }
  return out;
}

bool is_tag_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '-';
  });
}

std::optional<Tag> scan_tag(std::string_view s, std::size_t pos,
                            std::size_t& end) {
  if (pos >= s.size() || s[pos] != '<') return std::nullopt;
  const std::size_t close = s.find('>', pos + 1);
  if (close == std::string_view::npos) return std::nullopt;
  std::string_view body = s.substr(pos + 1, close - pos - 1);
  Tag tag;
  if (!body.empty() && body.front() == '/') {
    tag.closing = true;
    body.remove_prefix(1);
    if (!is_tag_name(body)) return std::nullopt;
    tag.name = std::string(body);
  } else {
    const auto eq = body.find('=');
    tag.name = std::string(body.substr(0, eq));
    if (!is_tag_name(tag.name)) return std::nullopt;
    if (eq != std::string_view::npos) {
      tag.value = std::string(body.substr(eq + 1));
      if (!is_tag_name(tag.value)) return std::nullopt;
    }
  }
  end = close + 1;
  return tag;
}

}  // namespace ssp
