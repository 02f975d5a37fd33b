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


#include "ssp/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/uscript.h>
#include <unicode/utf8.h>

#include <array>
#include <fstream>
#include <sstream>

#include "ssp/error.hpp"

namespace ssp::text {

namespace {

constexpr char32_t kSyllableBase = 0xAC00;
constexpr char32_t kSyllableLast = 0xD7A3;
constexpr int kMedialCount = 21;
constexpr int kFinalCount = 28;

constexpr char32_t kCompatFirst = 0x3131;
constexpr char32_t kCompatConsonantLast = 0x314E;
constexpr char32_t kCompatVowelFirst = 0x314F;
constexpr char32_t kCompatVowelLast = 0x3163;

// Final-consonant index for each compatibility consonant; 0 where the
// consonant (ㄸ, ㅃ, ㅉ) cannot close a syllable.
constexpr std::array<int, 30> kCompatToFinal = {
    1,  2,  3,  4,  5,  6,  7,  0,  8,  9,  10, 11, 12, 13, 14,
    15, 16, 17, 0,  18, 19, 20, 21, 22, 0,  23, 24, 25, 26, 27};

}  // namespace

std::string nfc(std::string_view utf8) {
  bool ascii = true;
  for (unsigned char c : utf8) {
    if (c >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) return std::string(utf8);

  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  icu::UnicodeString normalized = normalizer->normalize(source, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

char32_t next_code_point(std::string_view utf8, std::size_t& pos) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
  int32_t i = static_cast<int32_t>(pos);
  const auto length = static_cast<int32_t>(utf8.size());
  UChar32 c;
  U8_NEXT(bytes, i, length, c);
  pos = static_cast<std::size_t>(i);
  return c < 0 ? U'�' : static_cast<char32_t>(c);
}

std::u32string to_u32(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  std::size_t pos = 0;
  while (pos < utf8.size()) out.push_back(next_code_point(utf8, pos));
  return out;
}

void append_utf8(std::string& out, char32_t c) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool error = false;
  U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
  if (error) {
    append_utf8(out, U'�');
    return;
  }
  out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
}

std::string to_utf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size() * 3);
  for (char32_t c : s) append_utf8(out, c);
  return out;
}

bool is_whitespace(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }

bool is_digit(char32_t c) { return u_isdigit(static_cast<UChar32>(c)); }

bool is_latin_letter(char32_t c) {
  if (c < 0x80) return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  UErrorCode status = U_ZERO_ERROR;
  return u_isalpha(static_cast<UChar32>(c)) &&
         uscript_getScript(static_cast<UChar32>(c), &status) == USCRIPT_LATIN;
}

bool is_hangul_syllable(char32_t c) {
  return c >= kSyllableBase && c <= kSyllableLast;
}

Syllable decompose(char32_t syllable) {
  const int index = static_cast<int>(syllable - kSyllableBase);
  return {index / (kMedialCount * kFinalCount),
          (index % (kMedialCount * kFinalCount)) / kFinalCount,
          index % kFinalCount};
}

char32_t compose(const Syllable& s) {
  return kSyllableBase +
         static_cast<char32_t>((s.initial * kMedialCount + s.medial) *
                                   kFinalCount +
                               s.final);
}

bool is_compat_vowel(char32_t c) {
  return c >= kCompatVowelFirst && c <= kCompatVowelLast;
}

bool is_compat_consonant(char32_t c) {
  return c >= kCompatFirst && c <= kCompatConsonantLast;
}

int compat_vowel_index(char32_t c) {
  return static_cast<int>(c - kCompatVowelFirst);
}

std::optional<int> compat_final_index(char32_t c) {
  if (!is_compat_consonant(c)) return std::nullopt;
  const int final = kCompatToFinal[c - kCompatFirst];
  if (final == 0) return std::nullopt;
  return final;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = s.find(sep, begin);
    if (end == std::string_view::npos) {
      parts.push_back(s.substr(begin));
      return parts;
    }
    parts.push_back(s.substr(begin, end - begin));
    begin = end + 1;
  }
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string group_thousands(std::string_view digits) {
  std::string out;
  const std::size_t n = digits.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && (n - i) % 3 == 0) out.push_back(',');
    out.push_back(digits[i]);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace ssp::text
