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

#ifndef VOICECARE_PROVIDERS_TYPES_H_
#define VOICECARE_PROVIDERS_TYPES_H_

#include <array>
#include <compare>
#include <string>
#include <string_view>

namespace voicecare::providers {

// Primary language subtag: two or three lowercase ASCII letters ("fr").
class LanguageTag {
 public:
  // Throws Error(kInvalidArgument) for anything else.
  explicit LanguageTag(std::string code);

  const std::string& code() const { return code_; }

  friend auto operator<=>(const LanguageTag&, const LanguageTag&) = default;

 private:
  std::string code_;
};

bool IsValidLanguageCode(std::string_view code);

struct LanguageGuess {
  LanguageTag language;
  double confidence = 0.0;

  friend bool operator==(const LanguageGuess&, const LanguageGuess&) = default;
};

struct Transcript {
  std::string text;
  LanguageTag language;
  double confidence = 0.0;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

// Five emotion confidences in [0, 1] (they need not sum to one) and a
// separate sentiment axis in [-1, 1].
struct EmotionScores {
  double joy = 0.0;
  double anger = 0.0;
  double sadness = 0.0;
  double fear = 0.0;
  double disgust = 0.0;
  double sentiment = 0.0;

  // joy, anger, sadness, fear, disgust: the canonical order.
  std::array<double, 5> emotions() const { return {joy, anger, sadness, fear, disgust}; }

  friend bool operator==(const EmotionScores&, const EmotionScores&) = default;
};

inline constexpr std::array<std::string_view, 5> kEmotionNames = {"joy", "anger", "sadness",
                                                                  "fear", "disgust"};

// Throws Error(kInvalidArgument) if any field is out of range.
void Validate(const EmotionScores& scores);

}  // namespace voicecare::providers

#endif  // VOICECARE_PROVIDERS_TYPES_H_
