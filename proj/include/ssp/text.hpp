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


#ifndef SSP_TEXT_HPP_
#define SSP_TEXT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ssp::text {

// NFC normalization of UTF-8 text. Invalid sequences are replaced by U+FFFD.
std::string nfc(std::string_view utf8);

std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view s);
void append_utf8(std::string& out, char32_t c);

// Decodes the code point starting at byte offset `pos` and advances it.
char32_t next_code_point(std::string_view utf8, std::size_t& pos);

bool is_whitespace(char32_t c);
bool is_digit(char32_t c);
bool is_latin_letter(char32_t c);

// Precomposed Hangul syllables (U+AC00..U+D7A3) as (initial, medial, final)
// indices, final == 0 meaning no final consonant.
struct Syllable {
  int initial = 0;
  int medial = 0;
  int final = 0;
};

bool is_hangul_syllable(char32_t c);
Syllable decompose(char32_t syllable);
char32_t compose(const Syllable& s);

// Compatibility jamo (U+3131..U+3163) as typed in resource files.
bool is_compat_vowel(char32_t c);
bool is_compat_consonant(char32_t c);
// Medial index of a compatibility vowel.
int compat_vowel_index(char32_t c);
// Final index of a compatibility consonant, if it can close a syllable.
std::optional<int> compat_final_index(char32_t c);

// Initial index of ㅇ, the silent onset of vowel-initial suffixes.
inline constexpr int kSilentInitial = 11;

std::vector<std::string_view> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);

// Thousands-separated decimal rendering of a non-negative decimal string.
std::string group_thousands(std::string_view digits);

// Whole file contents; throws Error when unreadable.
std::string read_file(const std::string& path);

}  // namespace ssp::text

#endif  // SSP_TEXT_HPP_
