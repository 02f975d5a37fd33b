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


#include <algorithm>

#include "ssp/error.hpp"
#include "ssp/lexicon.hpp"
#include "ssp/text.hpp"

namespace ssp {

namespace {

bool is_cell_code(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

void check_variant(const VariantRule& rule, int line) {
  const std::u32string stem = text::to_u32(rule.stem_pattern);
  const std::u32string suffix = text::to_u32(rule.suffix_pattern);
  if (stem.empty() || suffix.empty()) {
    throw ParseError("variant patterns must not be empty", line);
  }
  for (std::size_t i = 0; i + 1 < stem.size(); ++i) {
    if (text::is_compat_vowel(stem[i])) {
      throw ParseError("a vowel jamo may only end a stem pattern", line);
    }
  }
  for (std::size_t i = 1; i < suffix.size(); ++i) {
    if (text::is_compat_vowel(suffix[i])) {
      throw ParseError("a vowel jamo may only start a suffix pattern", line);
    }
  }
}

Paradigm parse_paradigm(std::string_view rest, int line) {
  Paradigm p;
  bool named = false;
  for (std::string_view field : text::split(rest, ' ')) {
    if (field.empty()) continue;
    if (!named) {
      p.name = std::string(field);
      named = true;
      continue;
    }
    const auto eq = field.find('=');
    if (eq == std::string_view::npos || !is_cell_code(field.substr(0, eq))) {
      throw ParseError("paradigm cell must be CODE=suffix: '" +
                           std::string(field) + "'",
                       line);
    }
    ParadigmCell cell{std::string(field.substr(0, eq)),
                      std::string(field.substr(eq + 1))};
    for (const auto& c : p.cells) {
      if (c.code == cell.code) {
        throw ParseError("cell '" + cell.code + "' repeated", line);
      }
    }
    p.cells.push_back(std::move(cell));
  }
  if (!named || p.name == kInvariableClass) {
    throw ParseError("paradigm needs a name other than INV", line);
  }
  if (p.cells.empty()) throw ParseError("paradigm '" + p.name + "' has no cells", line);
  return p;
}

VariantRule parse_variant(std::string_view rest, int line) {
  rest = text::trim(rest);
  const auto arrow = rest.find("=>");
  const auto plus = rest.find('+');
  if (arrow == std::string_view::npos || plus == std::string_view::npos ||
      plus > arrow) {
    throw ParseError("variant rule must be <stem>+<suffix>=><fused>", line);
  }
  VariantRule rule{std::string(rest.substr(0, plus)),
                   std::string(rest.substr(plus + 1, arrow - plus - 1)),
                   std::string(rest.substr(arrow + 2))};
  check_variant(rule, line);
  return rule;
}

bool unit_matches_stem_end(char32_t unit, char32_t c) {
  if (!text::is_compat_vowel(unit)) return unit == c;
  if (!text::is_hangul_syllable(c)) return false;
  const auto s = text::decompose(c);
  return s.final == 0 && s.medial == text::compat_vowel_index(unit);
}

bool unit_matches_suffix_start(char32_t unit, char32_t c) {
  if (!text::is_compat_vowel(unit)) return unit == c;
  if (!text::is_hangul_syllable(c)) return false;
  const auto s = text::decompose(c);
  return s.initial == text::kSilentInitial &&
         s.medial == text::compat_vowel_index(unit);
}

// Step one: morpheme-internal variants at the stem/suffix junction.
std::u32string fuse(const std::u32string& stem, const std::u32string& suffix,
                    const InflectionRules& rules) {
  if (suffix.empty()) return stem;
  for (const auto& rule : rules.variants) {
    const std::u32string sp = text::to_u32(rule.stem_pattern);
    const std::u32string xp = text::to_u32(rule.suffix_pattern);
    if (stem.size() < sp.size() || suffix.size() < xp.size()) continue;
    const std::size_t base = stem.size() - sp.size();
    bool ok = true;
    for (std::size_t i = 0; ok && i < sp.size(); ++i) {
      ok = unit_matches_stem_end(sp[i], stem[base + i]);
    }
    for (std::size_t i = 0; ok && i < xp.size(); ++i) {
      ok = unit_matches_suffix_start(xp[i], suffix[i]);
    }
    if (!ok) continue;

    std::u32string out = stem.substr(0, base);
    for (char32_t c : text::to_u32(rule.fused)) {
      if (!text::is_compat_vowel(c)) {
        out.push_back(c);
        continue;
      }
      const char32_t onset = stem.back();
      const char32_t coda = suffix.front();
      if (!text::is_hangul_syllable(onset) || !text::is_hangul_syllable(coda)) {
        throw Error("variant rule " + rule.stem_pattern + "+" +
                    rule.suffix_pattern + " needs syllables to rebuild a vowel");
      }
      out.push_back(text::compose({text::decompose(onset).initial,
                                   text::compat_vowel_index(c),
                                   text::decompose(coda).final}));
    }
    out += suffix.substr(xp.size());
    return out;
  }
  return stem + suffix;
}

// Step two cleanup: ㄴ, ㄹ, ㅁ, ... written as suffixes close an open syllable.
std::u32string attach_finals(const std::u32string& s) {
  std::u32string out;
  for (char32_t c : s) {
    if (!out.empty() && text::is_hangul_syllable(out.back())) {
      if (const auto final = text::compat_final_index(c)) {
        auto syl = text::decompose(out.back());
        if (syl.final == 0) {
          syl.final = *final;
          out.back() = text::compose(syl);
          continue;
        }
      }
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

const Paradigm* InflectionRules::find(std::string_view name) const {
  for (const auto& p : paradigms) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

InflectionRules parse_inflection_rules(std::string_view source) {
  const std::string normalized = text::nfc(source);
  InflectionRules rules;
  int line_no = 0;
  for (std::string_view raw : text::split(normalized, '\n')) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (text::trim(raw).empty() || text::starts_with(raw, "//")) continue;
    if (text::starts_with(raw, "#PARADIGM ")) {
      Paradigm p = parse_paradigm(raw.substr(10), line_no);
      if (rules.find(p.name) != nullptr) {
        throw ParseError("paradigm '" + p.name + "' defined twice", line_no);
      }
      rules.paradigms.push_back(std::move(p));
    } else if (text::starts_with(raw, "#VARIANT ")) {
      rules.variants.push_back(parse_variant(raw.substr(9), line_no));
    } else {
      throw ParseError("expected #PARADIGM or #VARIANT", line_no);
    }
  }
  return rules;
}

std::string serialize_inflection_rules(const InflectionRules& rules) {
  std::string out;
  for (const auto& p : rules.paradigms) {
    out += "#PARADIGM " + p.name;
    for (const auto& cell : p.cells) out += " " + cell.code + "=" + cell.suffix;
    out += "\n";
  }
  for (const auto& v : rules.variants) {
    out += "#VARIANT " + v.stem_pattern + "+" + v.suffix_pattern + "=>" +
           v.fused + "\n";
  }
  return out;
}

InflectionRules merge_rules(const InflectionRules& first,
                            const InflectionRules& second) {
  InflectionRules out = first;
  for (const auto& p : second.paradigms) {
    if (out.find(p.name) != nullptr) {
      throw ValidationError("paradigm '" + p.name + "' defined twice");
    }
    out.paradigms.push_back(p);
  }
  out.variants.insert(out.variants.end(), second.variants.begin(),
                      second.variants.end());
  return out;
}

std::vector<SurfaceForm> inflect(const LexEntry& entry,
                                 const InflectionRules& rules) {
  if (entry.infl_class == kInvariableClass) {
    return {{entry.lemma, entry.lemma, entry.pos, entry.tags,
             std::string(kBaseCell)}};
  }
  const Paradigm* paradigm = rules.find(entry.infl_class);
  if (paradigm == nullptr) {
    throw Error("no paradigm for inflection class '" + entry.infl_class + "'");
  }
  std::u32string stem = text::to_u32(entry.lemma);
  if (stem.size() > 1 && stem.back() == U'다') stem.pop_back();

  std::vector<SurfaceForm> forms;
  for (const auto& cell : paradigm->cells) {
    const std::u32string surface =
        attach_finals(fuse(stem, text::to_u32(cell.suffix), rules));
    if (surface.empty()) {
      throw Error("inflection of '" + entry.lemma + "' for cell " + cell.code +
                  " produced an empty surface");
    }
    forms.push_back({text::to_utf8(surface), entry.lemma, entry.pos,
                     entry.tags, cell.code});
  }
  return forms;
}

}  // namespace ssp
