// Copyright 2026 The Voicecare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VOICECARE_PROVIDERS_LEXICON_H_
#define VOICECARE_PROVIDERS_LEXICON_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "voicecare/providers/types.h"

namespace voicecare::providers {

// A piece of text split into words and the separators around them.
// Word characters are ASCII letters, digits, apostrophes and every non-ASCII
// byte; anything else separates. leading + w0 + seps[0] + w1 + ... == text.
struct Tokenized {
  std::string leading;
  std::vector<std::string> words;
  std::vector<std::string> separators;  // one after each word
};

Tokenized Tokenize(std::string_view text);

// ASCII lowercase; other bytes untouched.
std::string LowerAscii(std::string_view s);

// Phrase table for one language direction. Lines are "source<TAB>target";
// blank lines and lines starting with '#' are skipped. Sources match
// case-insensitively as whole word sequences.
class TranslationLexicon {
 public:
  TranslationLexicon() = default;

  static TranslationLexicon Load(const std::filesystem::path& path);
  static TranslationLexicon Parse(std::string_view contents, std::string_view origin = "");

  // Same entries with source and target swapped. Later duplicates lose.
  TranslationLexicon Reversed() const;

  // Greedy longest-match phrase substitution. Unknown words and all
  // separators pass through. A capitalised first source word capitalises
  // the replacement.
  std::string Apply(std::string_view text) const;

  std::size_t size() const { return entries_.size(); }

 private:
  void Add(const std::string& source, const std::string& target);

  std::map<std::string, std::string> entries_;  // normalised source -> target
  std::vector<std::pair<std::string, std::string>> ordered_;
  std::size_t max_words_ = 0;
};

// Keyword weights per emotion. Lines are "token<TAB>emotion<TAB>weight" with
// emotion one of joy, anger, sadness, fear, disgust, sentiment.
class EmotionLexicon {
 public:
  EmotionLexicon() = default;

  static EmotionLexicon Load(const std::filesystem::path& path);
  static EmotionLexicon Parse(std::string_view contents, std::string_view origin = "");

  // Sums the weights of matching words per field. Emotion sums are floored
  // at 0 and scaled down together when they exceed 1 in total; sentiment is
  // clamped to [-1, 1]. No hits gives all zeros.
  EmotionScores Score(std::string_view text) const;

  std::size_t size() const { return weights_.size(); }

 private:
  // token -> (field index 0..5, weight)
  std::multimap<std::string, std::pair<int, double>> weights_;
};

}  // namespace voicecare::providers

#endif  // VOICECARE_PROVIDERS_LEXICON_H_
