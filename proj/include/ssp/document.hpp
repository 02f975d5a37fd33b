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


#ifndef SSP_DOCUMENT_HPP_
#define SSP_DOCUMENT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssp/tokenizer.hpp"

namespace ssp {

// A tagged span of tokens; `end` is inclusive.
struct Annotation {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string label;
  // Set for `<LABEL=attribute>` tags such as <ENT=CLO_TY>.
  std::string attribute;

  std::string open_tag() const;
  std::string close_tag() const;
  // "LABEL" or "LABEL=attribute".
  std::string key() const;
  bool operator==(const Annotation&) const = default;
};

struct AnnotatedDoc {
  std::string text;  // NFC-normalized, tags stripped
  std::vector<Token> tokens;
  std::vector<Annotation> annotations;  // sorted, disjoint

  bool operator==(const AnnotatedDoc&) const = default;
};

// Builds an unannotated document from raw text.
AnnotatedDoc make_document(std::string_view text);

// Throws AnnotationError unless the annotations are in range, sorted,
// non-overlapping, and neither start nor end on a boundary token.
void check_annotations(const AnnotatedDoc& doc);

// Inserts the tags into the text (MERGE style).
std::string serialize_annotated(const AnnotatedDoc& doc);

// One `<NAME>`, `<NAME=VALUE>` or `</NAME>` tag.
struct Tag {
  bool closing = false;
  std::string name;
  std::string value;
};

bool is_tag_name(std::string_view s);

// Recognizes a tag starting at s[pos]; on success `end` is one past '>'.
std::optional<Tag> scan_tag(std::string_view s, std::size_t pos,
                            std::size_t& end);

}  // namespace ssp

#endif  // SSP_DOCUMENT_HPP_
