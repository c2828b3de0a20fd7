// Copyright 2026 The t2tfaith Authors.
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

#ifndef T2TFAITH_TEXT_H_
#define T2TFAITH_TEXT_H_

// Deterministic tokenizer, sentence splitter and match normalization.
//
// All offsets are measured in Unicode scalar values (code points) of the
// original text, half-open. Normalization (NFC + case folding) is applied for
// comparison only and never changes offsets.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace t2tfaith {

// Half-open range [begin, end) of code point offsets.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool Contains(std::size_t pos) const { return begin <= pos && pos < end; }
  bool Overlaps(const Span &other) const {
    return begin < other.end && other.begin < end;
  }
  bool operator==(const Span &other) const = default;
};

struct Token {
  std::string text;  // UTF-8 surface form, as in the original text
  Span span;

  bool operator==(const Token &other) const = default;
};

// Decodes UTF-8 into code points. Throws ValidationError on malformed input.
std::u32string DecodeUtf8(std::string_view utf8);
std::string EncodeUtf8(std::u32string_view text);

// Character classes used by the tokenizer and splitter.
bool IsSpace(char32_t c);
bool IsPunct(char32_t c);

// Splits on whitespace. Leading and trailing punctuation characters of each
// chunk become single-character tokens, and a trailing possessive 's (or ’s)
// is split off. Internal hyphens and apostrophes stay inside the token.
std::vector<Token> Tokenize(std::u32string_view text);
std::vector<Token> Tokenize(std::string_view utf8);

// Rule-based splitter. A boundary follows '.', '!' or '?' when the next
// characters are whitespace and then an uppercase letter, an opening quote or
// a digit, unless the word ending at the terminator is a known abbreviation.
// Spans exclude inter-sentence whitespace; text without non-space characters
// yields no spans.
std::vector<Span> SegmentSentences(std::u32string_view text);
std::vector<Span> SegmentSentences(std::string_view utf8);

// The abbreviation guard list, in documentation order.
const std::vector<std::string> &Abbreviations();

// NFC + case fold of a single token; returns the empty string for tokens made
// only of punctuation.
std::string NormalizeToken(std::string_view token);

// NormalizeToken over a token sequence, dropping punctuation-only tokens.
std::vector<std::string> NormalizeForMatch(const std::vector<Token> &tokens);

// Normalized tokens that remember the index of the token they came from.
struct NormalizedToken {
  std::string text;
  std::size_t token_index = 0;
};
std::vector<NormalizedToken> NormalizeWithIndex(
    const std::vector<Token> &tokens);

}  // namespace t2tfaith

#endif  // T2TFAITH_TEXT_H_
