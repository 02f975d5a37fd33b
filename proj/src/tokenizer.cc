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


#include "ssp/tokenizer.hpp"

#include "ssp/text.hpp"

namespace ssp {

const char* token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::kSyllable:
      return "syllable";
    case TokenKind::kLatinWord:
      return "latin_word";
    case TokenKind::kDigitRun:
      return "digit_run";
    case TokenKind::kPunct:
      return "punct";
    case TokenKind::kBoundary:
      return "boundary";
  }
  return "?";
}

namespace {

TokenKind classify(char32_t c) {
  if (text::is_whitespace(c)) return TokenKind::kBoundary;
  if (text::is_hangul_syllable(c)) return TokenKind::kSyllable;
  if (text::is_latin_letter(c)) return TokenKind::kLatinWord;
  if (text::is_digit(c)) return TokenKind::kDigitRun;
  return TokenKind::kPunct;
}

bool is_run_kind(TokenKind kind) {
  return kind == TokenKind::kLatinWord || kind == TokenKind::kDigitRun ||
         kind == TokenKind::kBoundary;
}

}  // namespace

std::vector<Token> tokenize_normalized(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t begin = pos;
    const TokenKind kind = classify(text::next_code_point(text, pos));
    if (is_run_kind(kind)) {
      while (pos < text.size()) {
        std::size_t next = pos;
        if (classify(text::next_code_point(text, next)) != kind) break;
        pos = next;
      }
    }
    tokens.push_back({kind, std::string(text.substr(begin, pos - begin)),
                      begin, pos - begin});
  }
  return tokens;
}

std::vector<Token> tokenize(std::string_view text) {
  return tokenize_normalized(text::nfc(text));
}

}  // namespace ssp
