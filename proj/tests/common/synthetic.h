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

#ifndef T2TFAITH_TESTS_COMMON_SYNTHETIC_H_
#define T2TFAITH_TESTS_COMMON_SYNTHETIC_H_

// Random instance generator for property tests. Entities are always aligned
// to tokenizer boundaries and never overlap, like NER output.

#include <cstdint>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "t2tfaith/corpus.h"
#include "t2tfaith/jsonl.h"

namespace t2tfaith::testing {

inline const std::vector<std::string> &Words() {
  static const std::vector<std::string> kWords = {
      "river",  "stone",  "music",  "garden", "union",   "trade",
      "school", "north",  "bridge", "paper",  "silver",  "market",
      "the",    "of",     "and",    "in",     "was",     "a",
      "from",   "with",   "for",    "after",  "his",     "her",
      "Oakwood", "Glasgow", "Berkeley", "Paris", "Leeds", "Harbin",
      "Mary",   "John",   "Reid",   "Smith",  "Brown",   "Lee",
      "1880",   "1901",   "1950",   "42",     "Jackson's", "co-founder"};
  return kWords;
}

inline const std::vector<std::string> &Attributes() {
  static const std::vector<std::string> kAttributes = {
      "date of birth", "occupation", "place of birth", "spouse",
      "employer",      "member of",  "award received", "religion"};
  return kAttributes;
}

inline const std::vector<std::string> &Labels() {
  static const std::vector<std::string> kLabels = {
      "PERSON", "NORP", "ORG", "GPE", "LOC", "EVENT", "WORK_OF_ART",
      "DATE",   "CARDINAL", "ORDINAL", "QUANTITY", "MONEY", "OTHER"};
  return kLabels;
}

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::size_t Uniform(std::size_t lo, std::size_t hi) {  // inclusive
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool Coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::string Word() { return Words()[Uniform(0, Words().size() - 1)]; }

  std::string Phrase(std::size_t lo, std::size_t hi) {
    std::string out;
    const std::size_t n = Uniform(lo, hi);
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) out += ' ';
      out += Word();
    }
    return out;
  }

  Table RandomTable() {
    Table table;
    table.push_back(Record{"Name_ID", Phrase(1, 3)});
    const std::size_t n = Uniform(1, 6);
    for (std::size_t i = 0; i < n; ++i) {
      table.push_back(
          Record{Attributes()[Uniform(0, Attributes().size() - 1)],
                 Phrase(1, 3)});
    }
    return table;
  }

  // Sentences start with an uppercase word and end with '.', so the
  // splitter recovers them. Values of the table are mixed in verbatim.
  std::string RandomText(const Table &table, std::size_t sentences) {
    std::string text;
    for (std::size_t s = 0; s < sentences; ++s) {
      if (s > 0) text += ' ';
      text += Coin(0.5) ? "Later" : "The";
      const std::size_t n = Uniform(2, 9);
      for (std::size_t i = 0; i < n; ++i) {
        text += ' ';
        if (Coin(0.25)) {
          text += table[Uniform(0, table.size() - 1)].value;
        } else {
          text += Word();
        }
        if (Coin(0.08)) text += ',';
      }
      text += Coin(0.1) ? " (" + Word() + ")." : ".";
    }
    return text;
  }

  std::vector<EntityMention> RandomEntities(const std::string &text) {
    const std::u32string chars = DecodeUtf8(text);
    const std::vector<Token> tokens = Tokenize(std::u32string_view(chars));
    const std::vector<Span> sentences =
        SegmentSentences(std::u32string_view(chars));
    auto sentence_of = [&](std::size_t pos) {
      std::size_t s = 0;
      for (std::size_t i = 0; i < sentences.size(); ++i) {
        if (sentences[i].begin <= pos) s = i;
      }
      return s;
    };
    std::vector<EntityMention> out;
    std::size_t i = 0;
    while (i < tokens.size()) {
      if (!Coin(0.3) || IsPunct(DecodeUtf8(tokens[i].text)[0])) {
        ++i;
        continue;
      }
      std::size_t j = i + 1;
      const std::size_t want = Uniform(1, 3);
      while (j < tokens.size() && j - i < want &&
             !IsPunct(DecodeUtf8(tokens[j].text)[0]) &&
             sentence_of(tokens[j].span.begin) ==
                 sentence_of(tokens[i].span.begin)) {
        ++j;
      }
      const Span span{tokens[i].span.begin, tokens[j - 1].span.end};
      out.push_back(EntityMention{
          EncodeUtf8(std::u32string_view(chars).substr(span.begin,
                                                       span.size())),
          LabelFromName(Labels()[Uniform(0, Labels().size() - 1)]), span});
      i = j + 1;
    }
    return out;
  }

  Instance RandomInstance(const std::string &id) {
    Table table = RandomTable();
    std::string text = RandomText(table, Uniform(1, 6));
    std::vector<EntityMention> entities = RandomEntities(text);
    return Instance::Create(id, std::move(table), std::move(text),
                            std::move(entities));
  }

  std::mt19937_64 &rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::vector<Instance> ReadFixture(const std::string &path) {
  std::ifstream in(path);
  std::vector<Instance> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(ParseInstance(line));
  }
  return out;
}

}  // namespace t2tfaith::testing

#endif  // T2TFAITH_TESTS_COMMON_SYNTHETIC_H_
