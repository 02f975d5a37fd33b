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


#ifndef SSP_ANNOTATOR_HPP_
#define SSP_ANNOTATOR_HPP_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ssp/compiler.hpp"
#include "ssp/document.hpp"
#include "ssp/lexicon.hpp"

namespace ssp {

// The matcher's view of a document: whitespace tokens are dropped and
// remembered as a flag on the token that follows them.
class MatchInput {
 public:
  explicit MatchInput(const AnnotatedDoc& doc);

  std::size_t size() const { return tokens_.size(); }
  const Token& token(std::size_t i) const { return *tokens_[i]; }
  bool spaced_before(std::size_t i) const { return spaced_[i]; }
  std::size_t original_index(std::size_t i) const { return original_[i]; }

  // Dictionary surfaces starting at token i, as (token count, analyses),
  // confined to the whitespace-delimited word. Cached per position.
  using Surfaces = std::vector<std::pair<std::size_t, std::span<const SurfaceForm>>>;
  const Surfaces& surfaces(std::size_t i, const Lexicon& lexicon) const;

 private:
  std::string_view text_;
  std::vector<const Token*> tokens_;
  std::vector<bool> spaced_;
  std::vector<std::size_t> original_;
  mutable std::vector<std::optional<Surfaces>> cache_;
};

struct MatchOptions {
  // Deeper calls are not followed; bounds left recursion.
  int max_call_depth = 64;
};

struct Emission {
  std::size_t position = 0;  // MatchInput index the text is emitted before
  std::string text;
};

struct Match {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive MatchInput index
  std::vector<Emission> emissions;
};

// Runs a compiled network against a MatchInput with call-stack semantics.
// Paths are explored in priority order (arc order), so among equal-length
// matches the one from the earliest-declared edges and alternatives wins.
class Matcher {
 public:
  Matcher(Rtn rtn, const Lexicon& lexicon, MatchOptions options = {});

  // Longest non-empty match starting at `start`, if any.
  std::optional<Match> longest_at(const MatchInput& input,
                                  std::size_t start) const;
  // Every end position of an accepting path from `start`, ascending.
  std::vector<std::size_t> match_ends(const MatchInput& input,
                                      std::size_t start) const;

  const Rtn& rtn() const { return rtn_; }
  const Lexicon& lexicon() const { return *lexicon_; }

 private:
  struct Run;

  Rtn rtn_;
  const Lexicon* lexicon_;
  MatchOptions options_;
  std::vector<MaskConstraint> constraints_;
};

// Leftmost-longest annotation of single documents.
class Annotator {
 public:
  Annotator(Rtn rtn, const Lexicon& lexicon, MatchOptions options = {});

  // Throws AnnotationError when a match emits unbalanced or nested tags.
  AnnotatedDoc annotate(std::string_view text) const;

  const Matcher& matcher() const { return matcher_; }

 private:
  Matcher matcher_;
};

AnnotatedDoc annotate(std::string_view text, const Rtn& rtn,
                      const Lexicon& lexicon);

// Converts one match's emissions into annotations over the document's
// original token indices. Throws AnnotationError naming `graph`.
std::vector<Annotation> emissions_to_annotations(const Match& match,
                                                 const MatchInput& input,
                                                 std::string_view graph);

struct CorpusResult {
  std::size_t line = 0;  // 1-based
  std::string source;
  std::optional<AnnotatedDoc> doc;
  std::string error;  // set when doc is empty
};

// One document per line, results delivered to `sink` in input order. With
// workers > 1 batches are annotated in parallel. Errors are reported per
// line and do not stop the run.
void annotate_corpus(std::istream& in, const Annotator& annotator, int workers,
                     const std::function<void(const CorpusResult&)>& sink);
std::vector<CorpusResult> annotate_corpus(std::span<const std::string> lines,
                                          const Annotator& annotator,
                                          int workers = 1);

struct NgramCount {
  std::string ngram;
  std::size_t count = 0;

  bool operator==(const NgramCount&) const = default;
};

// Counts n-grams of non-whitespace tokens lying wholly outside annotations.
// Whitespace is skipped when forming n-grams and rendered as one space.
class NgramCounter {
 public:
  explicit NgramCounter(int n);

  void add(const AnnotatedDoc& doc);
  // Descending count, then ascending n-gram text.
  std::vector<NgramCount> table() const;

 private:
  int n_;
  std::map<std::string, std::size_t> counts_;
};

std::vector<NgramCount> suggest(std::span<const AnnotatedDoc> docs, int n);

}  // namespace ssp

#endif  // SSP_ANNOTATOR_HPP_
