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

#include "t2tfaith/text.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <string>

#include "t2tfaith/errors.h"

namespace t2tfaith {

std::u32string DecodeUtf8(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  std::size_t i = 0;
  const std::size_t n = utf8.size();
  while (i < n) {
    const auto b0 = static_cast<unsigned char>(utf8[i]);
    char32_t cp;
    std::size_t len;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      throw ValidationError("invalid UTF-8 lead byte at byte " +
                            std::to_string(i));
    }
    if (i + len > n) {
      throw ValidationError("truncated UTF-8 sequence at byte " +
                            std::to_string(i));
    }
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(utf8[i + k]);
      if ((b & 0xC0) != 0x80) {
        throw ValidationError("invalid UTF-8 continuation at byte " +
                              std::to_string(i + k));
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong forms, surrogates and values past U+10FFFF.
    static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw ValidationError("invalid UTF-8 scalar value at byte " +
                            std::to_string(i));
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string EncodeUtf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) {
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (c >> 12)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (c >> 18)));
      out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
  }
  return out;
}

bool IsSpace(char32_t c) {
  if (c < 0x80) return c == ' ' || (c >= '\t' && c <= '\r');
  return u_isUWhiteSpace(static_cast<UChar32>(c));
}

bool IsPunct(char32_t c) { return u_ispunct(static_cast<UChar32>(c)); }

namespace {

bool IsApostrophe(char32_t c) { return c == U'\'' || c == U'’'; }

void Emit(std::u32string_view text, std::size_t begin, std::size_t end,
          std::vector<Token> *out) {
  out->push_back(
      Token{EncodeUtf8(text.substr(begin, end - begin)), Span{begin, end}});
}

void TokenizeChunk(std::u32string_view text, std::size_t begin,
                   std::size_t end, std::vector<Token> *out) {
  while (begin < end && IsPunct(text[begin])) {
    Emit(text, begin, begin + 1, out);
    ++begin;
  }
  std::size_t core_end = end;
  while (core_end > begin && IsPunct(text[core_end - 1])) --core_end;
  if (core_end > begin) {
    if (core_end - begin > 2 && text[core_end - 1] == U's' &&
        IsApostrophe(text[core_end - 2])) {
      Emit(text, begin, core_end - 2, out);
      Emit(text, core_end - 2, core_end, out);
    } else {
      Emit(text, begin, core_end, out);
    }
  }
  for (std::size_t i = core_end; i < end; ++i) Emit(text, i, i + 1, out);
}

}  // namespace

std::vector<Token> Tokenize(std::u32string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && IsSpace(text[i])) ++i;
    std::size_t j = i;
    while (j < n && !IsSpace(text[j])) ++j;
    if (j > i) TokenizeChunk(text, i, j, &tokens);
    i = j;
  }
  return tokens;
}

std::vector<Token> Tokenize(std::string_view utf8) {
  return Tokenize(DecodeUtf8(utf8));
}

const std::vector<std::string> &Abbreviations() {
  static const std::vector<std::string> kList = {
      "Mr.",  "Mrs.", "Ms.",  "Dr.", "St.",  "Jr.", "Sr.",
      "Prof.", "vs.", "etc.", "e.g.", "i.e.", "No.", "U.S."};
  return kList;
}

namespace {

bool IsOpeningQuote(char32_t c) {
  return c == U'"' || c == U'\'' || c == U'“' || c == U'‘' ||
         c == U'«';
}

bool StartsSentence(char32_t c) {
  const auto uc = static_cast<UChar32>(c);
  return u_isupper(uc) || u_istitle(uc) || u_isdigit(uc) || IsOpeningQuote(c);
}

// The whitespace-delimited word ending at `last` (inclusive), without leading
// opening brackets or quotes.
bool EndsWithAbbreviation(std::u32string_view text, std::size_t last) {
  std::size_t begin = last;
  while (begin > 0 && !IsSpace(text[begin - 1])) --begin;
  while (begin < last && (IsOpeningQuote(text[begin]) || text[begin] == U'(' ||
                          text[begin] == U'[')) {
    ++begin;
  }
  const std::string word = EncodeUtf8(text.substr(begin, last + 1 - begin));
  const auto &abbrevs = Abbreviations();
  return std::find(abbrevs.begin(), abbrevs.end(), word) != abbrevs.end();
}

}  // namespace

std::vector<Span> SegmentSentences(std::u32string_view text) {
  std::vector<Span> spans;
  const std::size_t n = text.size();
  std::size_t start = 0;
  while (start < n && IsSpace(text[start])) ++start;
  if (start == n) return spans;

  for (std::size_t i = start; i < n; ++i) {
    const char32_t c = text[i];
    if (c != U'.' && c != U'!' && c != U'?') continue;
    if (i + 1 >= n || !IsSpace(text[i + 1])) continue;
    std::size_t next = i + 1;
    while (next < n && IsSpace(text[next])) ++next;
    if (next == n || !StartsSentence(text[next])) continue;
    if (c == U'.' && EndsWithAbbreviation(text, i)) continue;
    spans.push_back(Span{start, i + 1});
    start = next;
    i = next - 1;
  }
  std::size_t end = n;
  while (end > start && IsSpace(text[end - 1])) --end;
  spans.push_back(Span{start, end});
  return spans;
}

std::vector<Span> SegmentSentences(std::string_view utf8) {
  return SegmentSentences(DecodeUtf8(utf8));
}

std::string NormalizeToken(std::string_view token) {
  bool ascii = true;
  bool all_punct = true;
  for (char ch : token) {
    if (static_cast<unsigned char>(ch) >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) {
    std::string out(token);
    for (char &ch : out) {
      if (!IsPunct(static_cast<char32_t>(ch))) all_punct = false;
      if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
    }
    return all_punct ? std::string() : out;
  }

  for (char32_t c : DecodeUtf8(token)) {
    if (!IsPunct(c)) {
      all_punct = false;
      break;
    }
  }
  if (all_punct) return std::string();

  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2 *nfc = icu::Normalizer2::getNFCInstance(status);
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(token.data(), static_cast<int32_t>(token.size())));
  if (U_SUCCESS(status)) s = nfc->normalize(s, status);
  s.foldCase(U_FOLD_CASE_DEFAULT);
  if (U_SUCCESS(status)) s = nfc->normalize(s, status);
  if (U_FAILURE(status)) {
    throw ValidationError(std::string("unicode normalization failed: ") +
                          u_errorName(status));
  }
  std::string out;
  s.toUTF8String(out);
  return out;
}

std::vector<std::string> NormalizeForMatch(const std::vector<Token> &tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token &token : tokens) {
    std::string norm = NormalizeToken(token.text);
    if (!norm.empty()) out.push_back(std::move(norm));
  }
  return out;
}

std::vector<NormalizedToken> NormalizeWithIndex(
    const std::vector<Token> &tokens) {
  std::vector<NormalizedToken> out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string norm = NormalizeToken(tokens[i].text);
    if (!norm.empty()) out.push_back(NormalizedToken{std::move(norm), i});
  }
  return out;
}

}  // namespace t2tfaith
