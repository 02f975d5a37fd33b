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


#ifndef SSP_LEXICON_HPP_
#define SSP_LEXICON_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ssp {

inline constexpr std::string_view kInvariableClass = "INV";
inline constexpr std::string_view kBaseCell = "BASE";

// A lemma-level dictionary entry.
struct LexEntry {
  std::string lemma;
  std::string pos;
  std::vector<std::string> tags;
  std::string infl_class;

  bool operator==(const LexEntry&) const = default;
};

// One generated (or invariable) form of an entry.
struct SurfaceForm {
  std::string surface;
  std::string lemma;
  std::string pos;
  std::vector<std::string> tags;
  std::string suffix_info;

  bool has_tag(std::string_view tag) const;
  bool operator==(const SurfaceForm&) const = default;
};

struct ParadigmCell {
  std::string code;
  std::string suffix;

  bool operator==(const ParadigmCell&) const = default;
};

struct Paradigm {
  std::string name;
  std::vector<ParadigmCell> cells;

  bool operator==(const Paradigm&) const = default;
};

// Rewrites the end of a stem and the start of a suffix into a fused string.
//
// Patterns are written in syllables. A compatibility vowel jamo is also
// allowed as the last unit of the stem pattern (matching an open syllable
// with that vowel) and as the first unit of the suffix pattern (matching a
// syllable with the silent onset ㅇ and that vowel). A vowel jamo in `fused`
// builds a syllable from the stem syllable's onset, that vowel, and the
// suffix syllable's final: ㅡ+ㅓ=>ㅓ turns 크+었 into 컸.
struct VariantRule {
  std::string stem_pattern;
  std::string suffix_pattern;
  std::string fused;

  bool operator==(const VariantRule&) const = default;
};

struct InflectionRules {
  std::vector<Paradigm> paradigms;
  // Tried in order; the first rule that matches a (stem, suffix) pair fires.
  std::vector<VariantRule> variants;

  const Paradigm* find(std::string_view name) const;
  bool empty() const { return paradigms.empty() && variants.empty(); }
  bool operator==(const InflectionRules&) const = default;
};

// Parses `#PARADIGM` / `#VARIANT` lines; `//` comments and blank lines are
// skipped. Throws ParseError.
InflectionRules parse_inflection_rules(std::string_view source);
std::string serialize_inflection_rules(const InflectionRules& rules);

// Paradigms of both, then variants of both. Throws ValidationError when a
// paradigm name is defined twice.
InflectionRules merge_rules(const InflectionRules& first,
                            const InflectionRules& second);

// Two-step inflection: each paradigm cell's suffix is fused with the stem by
// the first matching variant rule (or plainly concatenated), then stray
// compatibility consonants are folded into the preceding open syllable.
// The stem is the lemma minus a final 다. INV entries yield the lemma alone.
std::vector<SurfaceForm> inflect(const LexEntry& entry,
                                 const InflectionRules& rules);

// Grammatical symbol written `<...>` in a graph box.
struct LexicalMask {
  enum class Special { kNone, kToken, kEpsilon };

  Special special = Special::kNone;
  // Lemma or code written before '.' or '+'. When `pos` is set this is
  // always a lemma; otherwise the lexicon's code inventory decides.
  std::string head;
  std::string pos;
  std::vector<std::string> tags;

  // Parses "<...>" including the angle brackets. Throws ParseError.
  static LexicalMask parse(std::string_view text);
  std::string to_string() const;
  bool operator==(const LexicalMask&) const = default;
};

struct PrefixMatch {
  std::size_t end = 0;  // byte offset one past the matched surface
  std::span<const SurfaceForm> analyses;
};

class Lexicon;

// Mask constraints after resolving the bare head against a lexicon.
struct MaskConstraint {
  LexicalMask::Special special = LexicalMask::Special::kNone;
  std::optional<std::string> lemma;
  std::optional<std::string> pos;
  std::vector<std::string> tags;

  bool accepts(const SurfaceForm& form) const;
};

MaskConstraint resolve_constraint(const LexicalMask& mask,
                                  const Lexicon& lexicon);

// True iff some analysis satisfies every constraint of the mask.
bool resolve_mask(const LexicalMask& mask,
                  std::span<const SurfaceForm> analyses,
                  const Lexicon& lexicon);

class Lexicon {
 public:
  // One source line, kept so that serialization reproduces the file.
  struct Line {
    enum class Kind { kBlank, kComment, kPos, kTag, kParadigm, kVariant, kEntry };

    Kind kind = Kind::kBlank;
    std::string text;         // comment text or declared code
    std::size_t index = 0;    // into paradigms, variants or entries
    bool pos_first = false;   // entry written as `lemma,POS.INV+...`

    bool operator==(const Line&) const = default;
  };

  Lexicon() = default;

  // Builds a lexicon from parts with a canonical layout: codes, embedded
  // rules, then entries. Throws ValidationError on invariant violations.
  static Lexicon make(std::vector<std::string> pos_codes,
                      std::vector<std::string> tag_codes,
                      InflectionRules embedded_rules,
                      std::vector<LexEntry> entries);

  const std::vector<LexEntry>& entries() const { return entries_; }
  const std::vector<std::string>& pos_codes() const { return pos_codes_; }
  const std::vector<std::string>& tag_codes() const { return tag_codes_; }
  const InflectionRules& embedded_rules() const { return embedded_rules_; }
  const std::vector<Line>& layout() const { return layout_; }

  bool is_pos(std::string_view code) const;
  bool is_tag(std::string_view code) const;
  bool is_code(std::string_view code) const {
    return is_pos(code) || is_tag(code);
  }
  bool has_lemma(std::string_view lemma) const;

  // Populated by build_index; forms are sorted by surface, homographs kept
  // in entry order.
  bool indexed() const { return indexed_; }
  std::span<const SurfaceForm> forms() const { return forms_; }
  std::span<const SurfaceForm> lookup(std::string_view surface) const;
  // Every dictionary surface that starts at byte `pos` of `text` and ends
  // at or before `limit`, shortest first.
  std::vector<PrefixMatch> prefix_matches(
      std::string_view text, std::size_t pos,
      std::size_t limit = std::string_view::npos) const;

  // Compares declarations, entries and layout; generated forms are ignored.
  bool operator==(const Lexicon& other) const;

 private:
  friend Lexicon parse_lexicon(std::string_view source);
  friend Lexicon build_index(Lexicon lexicon, const InflectionRules& rules);
  friend std::string serialize_lexicon(const Lexicon& lexicon);

  struct TrieNode {
    std::vector<std::pair<unsigned char, std::uint32_t>> children;
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
  };

  void add_pos(std::string code, int line);
  void add_tag(std::string code, int line);
  void add_entry(LexEntry entry, int line);
  void check_classes(const InflectionRules& rules) const;
  void build_trie();

  std::vector<std::string> pos_codes_;
  std::vector<std::string> tag_codes_;
  InflectionRules embedded_rules_;
  std::vector<LexEntry> entries_;
  std::vector<Line> layout_;
  bool trailing_newline_ = true;

  bool indexed_ = false;
  std::vector<SurfaceForm> forms_;
  std::vector<TrieNode> trie_;
  std::vector<std::string> sorted_lemmas_;
};

// Parses the line-based lexicon format. Throws ParseError naming the line.
Lexicon parse_lexicon(std::string_view source);
std::string serialize_lexicon(const Lexicon& lexicon);

// Inflects every entry with the lexicon's embedded rules merged with
// `rules` and builds the surface index. Throws ValidationError for unknown
// inflection classes and Error for inflection failures.
Lexicon build_index(Lexicon lexicon, const InflectionRules& rules);

}  // namespace ssp

#endif  // SSP_LEXICON_HPP_
