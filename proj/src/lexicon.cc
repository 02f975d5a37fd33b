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


#include "ssp/lexicon.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "ssp/error.hpp"
#include "ssp/text.hpp"

namespace ssp {

namespace {

bool is_code_syntax(std::string_view s) {
  if (s.empty() || !(s[0] >= 'A' && s[0] <= 'Z')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

bool is_class_syntax(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '_';
  });
}

bool contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::string escape_lemma(std::string_view lemma) {
  std::string out;
  for (std::size_t i = 0; i < lemma.size(); ++i) {
    const char c = lemma[i];
    if (c == ',' || c == '\\' || (i == 0 && (c == '#' || c == '/'))) {
      out.push_back('\\');
    }
    out.push_back(c);
  }
  return out;
}

// Splits `lemma,rest` at the first unescaped comma, unescaping the lemma.
bool split_entry(std::string_view line, std::string& lemma,
                 std::string_view& rest) {
  lemma.clear();
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '\\' && i + 1 < line.size()) {
      lemma.push_back(line[++i]);
    } else if (c == ',') {
      rest = line.substr(i + 1);
      return true;
    } else {
      lemma.push_back(c);
    }
  }
  return false;
}

bool has_whitespace(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (text::is_whitespace(text::next_code_point(s, pos))) return true;
  }
  return false;
}

}  // namespace

bool SurfaceForm::has_tag(std::string_view tag) const {
  return contains(tags, tag);
}

// ---------------------------------------------------------------------------
// Lexical masks

LexicalMask LexicalMask::parse(std::string_view text) {
  if (text.size() < 3 || text.front() != '<' || text.back() != '>') {
    throw ParseError("lexical mask must look like <...>: '" +
                     std::string(text) + "'");
  }
  const std::string_view body = text.substr(1, text.size() - 2);
  LexicalMask mask;
  if (body == "TOKEN") {
    mask.special = Special::kToken;
    return mask;
  }
  if (body == "E") {
    mask.special = Special::kEpsilon;
    return mask;
  }
  for (char c : body) {
    if (c == '<' || c == '>' || c == ' ' || c == '\t' || c == '"' ||
        c == '|') {
      throw ParseError("invalid character in lexical mask '" +
                       std::string(text) + "'");
    }
  }
  const auto parts = text::split(body, '+');
  std::string_view head = parts[0];
  if (const auto dot = head.find('.'); dot != std::string_view::npos) {
    mask.pos = std::string(head.substr(dot + 1));
    head = head.substr(0, dot);
    if (!is_code_syntax(mask.pos)) {
      throw ParseError("invalid POS code in mask '" + std::string(text) + "'");
    }
  }
  if (head.empty()) {
    throw ParseError("empty lemma or code in mask '" + std::string(text) + "'");
  }
  mask.head = std::string(head);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (!is_code_syntax(parts[i])) {
      throw ParseError("invalid tag code in mask '" + std::string(text) + "'");
    }
    mask.tags.emplace_back(parts[i]);
  }
  return mask;
}

std::string LexicalMask::to_string() const {
  switch (special) {
    case Special::kToken:
      return "<TOKEN>";
    case Special::kEpsilon:
      return "<E>";
    case Special::kNone:
      break;
  }
  std::string out = "<" + head;
  if (!pos.empty()) out += "." + pos;
  for (const auto& tag : tags) out += "+" + tag;
  out += ">";
  return out;
}

bool MaskConstraint::accepts(const SurfaceForm& form) const {
  if (special == LexicalMask::Special::kToken) return true;
  if (special == LexicalMask::Special::kEpsilon) return false;
  if (lemma && form.lemma != *lemma) return false;
  if (pos && form.pos != *pos) return false;
  return std::all_of(tags.begin(), tags.end(),
                     [&](const std::string& t) { return form.has_tag(t); });
}

MaskConstraint resolve_constraint(const LexicalMask& mask,
                                  const Lexicon& lexicon) {
  MaskConstraint c;
  c.special = mask.special;
  c.tags = mask.tags;
  if (mask.special != LexicalMask::Special::kNone) return c;
  if (!mask.pos.empty()) {
    c.lemma = mask.head;
    c.pos = mask.pos;
  } else if (lexicon.is_pos(mask.head)) {
    c.pos = mask.head;
  } else if (lexicon.is_tag(mask.head)) {
    c.tags.insert(c.tags.begin(), mask.head);
  } else {
    c.lemma = mask.head;
  }
  return c;
}

bool resolve_mask(const LexicalMask& mask,
                  std::span<const SurfaceForm> analyses,
                  const Lexicon& lexicon) {
  const MaskConstraint c = resolve_constraint(mask, lexicon);
  return std::any_of(analyses.begin(), analyses.end(),
                     [&](const SurfaceForm& f) { return c.accepts(f); });
}

// ---------------------------------------------------------------------------
// Lexicon

bool Lexicon::is_pos(std::string_view code) const {
  return contains(pos_codes_, code);
}

bool Lexicon::is_tag(std::string_view code) const {
  return contains(tag_codes_, code);
}

bool Lexicon::has_lemma(std::string_view lemma) const {
  if (indexed_) {
    return std::binary_search(sorted_lemmas_.begin(), sorted_lemmas_.end(),
                              lemma);
  }
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const LexEntry& e) { return e.lemma == lemma; });
}

bool Lexicon::operator==(const Lexicon& other) const {
  return pos_codes_ == other.pos_codes_ && tag_codes_ == other.tag_codes_ &&
         embedded_rules_ == other.embedded_rules_ &&
         entries_ == other.entries_ && layout_ == other.layout_ &&
         trailing_newline_ == other.trailing_newline_;
}

void Lexicon::add_pos(std::string code, int line) {
  if (!is_code_syntax(code) || code == kInvariableClass || code == "E" ||
      code == "TOKEN") {
    throw ParseError("invalid POS code '" + code + "'", line);
  }
  if (is_code(code)) throw ParseError("code '" + code + "' declared twice", line);
  pos_codes_.push_back(std::move(code));
}

void Lexicon::add_tag(std::string code, int line) {
  if (!is_code_syntax(code) || code == kInvariableClass || code == "E" ||
      code == "TOKEN") {
    throw ParseError("invalid tag code '" + code + "'", line);
  }
  if (is_code(code)) throw ParseError("code '" + code + "' declared twice", line);
  tag_codes_.push_back(std::move(code));
}

void Lexicon::add_entry(LexEntry entry, int line) {
  if (entry.lemma.empty()) throw ParseError("empty lemma", line);
  if (has_whitespace(entry.lemma)) {
    throw ParseError("lemma '" + entry.lemma + "' contains whitespace", line);
  }
  if (!is_pos(entry.pos)) {
    throw ParseError("undeclared POS code '" + entry.pos + "'", line);
  }
  std::set<std::string_view> seen;
  for (const auto& tag : entry.tags) {
    if (!is_tag(tag)) throw ParseError("undeclared tag code '" + tag + "'", line);
    if (!seen.insert(tag).second) {
      throw ParseError("tag '" + tag + "' repeated", line);
    }
  }
  if (!is_class_syntax(entry.infl_class)) {
    throw ParseError("invalid inflection class '" + entry.infl_class + "'",
                     line);
  }
  if (!embedded_rules_.paradigms.empty() &&
      entry.infl_class != kInvariableClass &&
      embedded_rules_.find(entry.infl_class) == nullptr) {
    throw ParseError("unknown inflection class '" + entry.infl_class + "'",
                     line);
  }
  for (const auto& e : entries_) {
    if (e.lemma == entry.lemma && e.pos == entry.pos) {
      throw ParseError(
          "duplicate entry (" + entry.lemma + ", " + entry.pos + ")", line);
    }
  }
  entries_.push_back(std::move(entry));
}

void Lexicon::check_classes(const InflectionRules& rules) const {
  for (const auto& e : entries_) {
    if (e.infl_class != kInvariableClass && rules.find(e.infl_class) == nullptr) {
      throw ValidationError("entry '" + e.lemma +
                            "' names unknown inflection class '" +
                            e.infl_class + "'");
    }
  }
}

Lexicon Lexicon::make(std::vector<std::string> pos_codes,
                      std::vector<std::string> tag_codes,
                      InflectionRules embedded_rules,
                      std::vector<LexEntry> entries) {
  Lexicon lex;
  try {
    for (auto& code : pos_codes) {
      lex.layout_.push_back({Line::Kind::kPos, code, 0, false});
      lex.add_pos(std::move(code), 0);
    }
    for (auto& code : tag_codes) {
      lex.layout_.push_back({Line::Kind::kTag, code, 0, false});
      lex.add_tag(std::move(code), 0);
    }
    for (std::size_t i = 0; i < embedded_rules.paradigms.size(); ++i) {
      lex.layout_.push_back({Line::Kind::kParadigm, {}, i, false});
    }
    for (std::size_t i = 0; i < embedded_rules.variants.size(); ++i) {
      lex.layout_.push_back({Line::Kind::kVariant, {}, i, false});
    }
    lex.embedded_rules_ = std::move(embedded_rules);
    for (auto& entry : entries) {
      lex.layout_.push_back(
          {Line::Kind::kEntry, {}, lex.entries_.size(), false});
      lex.add_entry(std::move(entry), 0);
    }
  } catch (const ParseError& e) {
    throw ValidationError(e.detail());
  }
  return lex;
}

Lexicon parse_lexicon(std::string_view source) {
  const std::string normalized = text::nfc(source);
  std::string_view body = normalized;
  Lexicon lex;
  lex.trailing_newline_ = body.empty() || body.back() == '\n';
  if (!body.empty() && body.back() == '\n') body.remove_suffix(1);
  if (normalized.empty()) return lex;

  int line_no = 0;
  for (std::string_view raw : text::split(body, '\n')) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    using Kind = Lexicon::Line::Kind;
    if (text::trim(raw).empty()) {
      lex.layout_.push_back({Kind::kBlank, {}, 0, false});
      continue;
    }
    if (text::starts_with(raw, "//")) {
      lex.layout_.push_back({Kind::kComment, std::string(raw), 0, false});
      continue;
    }
    if (text::starts_with(raw, "#POS ") || text::starts_with(raw, "#TAG ")) {
      const std::string code(text::trim(raw.substr(5)));
      if (raw[1] == 'P') {
        lex.add_pos(code, line_no);
        lex.layout_.push_back({Kind::kPos, code, 0, false});
      } else {
        lex.add_tag(code, line_no);
        lex.layout_.push_back({Kind::kTag, code, 0, false});
      }
      continue;
    }
    if (text::starts_with(raw, "#PARADIGM ") ||
        text::starts_with(raw, "#VARIANT ")) {
      InflectionRules one;
      try {
        one = parse_inflection_rules(raw);
      } catch (const ParseError& e) {
        throw ParseError(e.detail(), line_no);
      }
      auto& rules = lex.embedded_rules_;
      if (!one.paradigms.empty()) {
        if (rules.find(one.paradigms[0].name) != nullptr) {
          throw ParseError(
              "paradigm '" + one.paradigms[0].name + "' defined twice", line_no);
        }
        lex.layout_.push_back(
            {Kind::kParadigm, {}, rules.paradigms.size(), false});
        rules.paradigms.push_back(std::move(one.paradigms[0]));
      } else {
        lex.layout_.push_back({Kind::kVariant, {}, rules.variants.size(), false});
        rules.variants.push_back(std::move(one.variants[0]));
      }
      continue;
    }
    if (raw[0] == '#') {
      throw ParseError("unknown header line '" + std::string(raw) + "'",
                       line_no);
    }

    LexEntry entry;
    std::string_view rest;
    if (!split_entry(raw, entry.lemma, rest)) {
      throw ParseError("expected 'lemma,<class>.<POS>[+TAG]*'", line_no);
    }
    const auto parts = text::split(rest, '+');
    const auto dot = parts[0].find('.');
    if (dot == std::string_view::npos) {
      throw ParseError("expected '<class>.<POS>' after the lemma", line_no);
    }
    const std::string first(parts[0].substr(0, dot));
    const std::string second(parts[0].substr(dot + 1));
    bool pos_first = false;
    if (second == kInvariableClass && lex.is_pos(first)) {
      entry.infl_class = second;
      entry.pos = first;
      pos_first = true;
    } else {
      entry.infl_class = first;
      entry.pos = second;
    }
    for (std::size_t i = 1; i < parts.size(); ++i) {
      entry.tags.emplace_back(parts[i]);
    }
    lex.layout_.push_back(
        {Kind::kEntry, {}, lex.entries_.size(), pos_first});
    lex.add_entry(std::move(entry), line_no);
  }
  return lex;
}

std::string serialize_lexicon(const Lexicon& lexicon) {
  const InflectionRules& rules = lexicon.embedded_rules_;
  std::string out;
  bool first = true;
  for (const auto& line : lexicon.layout_) {
    if (!first) out.push_back('\n');
    first = false;
    using Kind = Lexicon::Line::Kind;
    switch (line.kind) {
      case Kind::kBlank:
        break;
      case Kind::kComment:
        out += line.text;
        break;
      case Kind::kPos:
        out += "#POS " + line.text;
        break;
      case Kind::kTag:
        out += "#TAG " + line.text;
        break;
      case Kind::kParadigm: {
        InflectionRules one;
        one.paradigms.push_back(rules.paradigms[line.index]);
        std::string s = serialize_inflection_rules(one);
        s.pop_back();
        out += s;
        break;
      }
      case Kind::kVariant: {
        InflectionRules one;
        one.variants.push_back(rules.variants[line.index]);
        std::string s = serialize_inflection_rules(one);
        s.pop_back();
        out += s;
        break;
      }
      case Kind::kEntry: {
        const LexEntry& e = lexicon.entries_[line.index];
        out += escape_lemma(e.lemma) + ",";
        out += line.pos_first ? e.pos + "." + e.infl_class
                              : e.infl_class + "." + e.pos;
        for (const auto& tag : e.tags) out += "+" + tag;
        break;
      }
    }
  }
  if (!lexicon.layout_.empty() && lexicon.trailing_newline_) out.push_back('\n');
  return out;
}

Lexicon build_index(Lexicon lexicon, const InflectionRules& rules) {
  const InflectionRules merged = merge_rules(lexicon.embedded_rules_, rules);
  lexicon.check_classes(merged);

  std::vector<SurfaceForm> forms;
  for (const auto& entry : lexicon.entries_) {
    for (auto& form : inflect(entry, merged)) forms.push_back(std::move(form));
  }
  std::stable_sort(forms.begin(), forms.end(),
                   [](const SurfaceForm& a, const SurfaceForm& b) {
                     return a.surface < b.surface;
                   });
  lexicon.forms_ = std::move(forms);

  lexicon.sorted_lemmas_.clear();
  for (const auto& e : lexicon.entries_) lexicon.sorted_lemmas_.push_back(e.lemma);
  std::sort(lexicon.sorted_lemmas_.begin(), lexicon.sorted_lemmas_.end());
  lexicon.sorted_lemmas_.erase(
      std::unique(lexicon.sorted_lemmas_.begin(), lexicon.sorted_lemmas_.end()),
      lexicon.sorted_lemmas_.end());

  lexicon.build_trie();
  lexicon.indexed_ = true;
  return lexicon;
}

void Lexicon::build_trie() {
  trie_.assign(1, TrieNode{});
  std::size_t i = 0;
  while (i < forms_.size()) {
    std::size_t j = i;
    while (j < forms_.size() && forms_[j].surface == forms_[i].surface) ++j;
    std::uint32_t node = 0;
    for (unsigned char byte : forms_[i].surface) {
      auto& children = trie_[node].children;
      auto it = std::lower_bound(
          children.begin(), children.end(), byte,
          [](const auto& child, unsigned char b) { return child.first < b; });
      if (it != children.end() && it->first == byte) {
        node = it->second;
      } else {
        const auto fresh = static_cast<std::uint32_t>(trie_.size());
        children.insert(it, {byte, fresh});
        trie_.emplace_back();
        node = fresh;
      }
    }
    trie_[node].begin = static_cast<std::uint32_t>(i);
    trie_[node].end = static_cast<std::uint32_t>(j);
    i = j;
  }
}

std::span<const SurfaceForm> Lexicon::lookup(std::string_view surface) const {
  const auto first = std::lower_bound(
      forms_.begin(), forms_.end(), surface,
      [](const SurfaceForm& f, std::string_view s) { return f.surface < s; });
  const auto last = std::upper_bound(
      first, forms_.end(), surface,
      [](std::string_view s, const SurfaceForm& f) { return s < f.surface; });
  return {forms_.data() + (first - forms_.begin()),
          static_cast<std::size_t>(last - first)};
}

std::vector<PrefixMatch> Lexicon::prefix_matches(std::string_view text,
                                                 std::size_t pos,
                                                 std::size_t limit) const {
  std::vector<PrefixMatch> out;
  if (trie_.empty()) return out;
  limit = std::min(limit, text.size());
  std::uint32_t node = 0;
  for (std::size_t i = pos; i < limit; ++i) {
    const auto byte = static_cast<unsigned char>(text[i]);
    const auto& children = trie_[node].children;
    auto it = std::lower_bound(
        children.begin(), children.end(), byte,
        [](const auto& child, unsigned char b) { return child.first < b; });
    if (it == children.end() || it->first != byte) break;
    node = it->second;
    const TrieNode& n = trie_[node];
    if (n.end > n.begin) {
      out.push_back({i + 1, std::span<const SurfaceForm>(
                                forms_.data() + n.begin, n.end - n.begin)});
    }
  }
  return out;
}

}  // namespace ssp
