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


#ifndef SSP_TOKENIZER_HPP_
#define SSP_TOKENIZER_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ssp {

enum class TokenKind { kSyllable, kLatinWord, kDigitRun, kPunct, kBoundary };

const char* token_kind_name(TokenKind kind);

// A slice of the (normalized) input. offset/length are byte positions.
struct Token {
  TokenKind kind = TokenKind::kPunct;
  std::string text;
  std::size_t offset = 0;
  std::size_t length = 0;

  bool is_boundary() const { return kind == TokenKind::kBoundary; }
  bool operator==(const Token&) const = default;
};

// Splits already-normalized text. Hangul syllables are one token each;
// maximal Latin-letter and digit runs are one token; whitespace runs
// collapse to one boundary token; every other character stands alone.
std::vector<Token> tokenize_normalized(std::string_view text);

// NFC-normalizes and tokenizes. Offsets refer to the normalized text.
std::vector<Token> tokenize(std::string_view text);

}  // namespace ssp

#endif  // SSP_TOKENIZER_HPP_
