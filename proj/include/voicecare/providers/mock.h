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

// Deterministic offline providers.
//
// The mock synthesizer writes the ground truth (text and language) into the
// clip metadata, which survives the WAV container and the record loop, so
// that the mock recognizer and language detector can invert it exactly.

#ifndef VOICECARE_PROVIDERS_MOCK_H_
#define VOICECARE_PROVIDERS_MOCK_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "voicecare/providers/lexicon.h"
#include "voicecare/providers/provider.h"

namespace voicecare::providers {

inline constexpr char kTextTag[] = "text";
inline constexpr char kLanguageTag[] = "language";
inline constexpr char kRateTag[] = "rate";

class MockTextToSpeech : public TextToSpeech {
 public:
  // Seconds of audio per code point at rate 1.
  static constexpr double kSecondsPerCharacter = 0.06;
  static constexpr double kAmplitude = 0.25;

  audio::AudioClip Synthesize(std::string_view text, const LanguageTag& language,
                              double rate) override;
};

class MockSpeechToText : public SpeechToText {
 public:
  explicit MockSpeechToText(double silence_threshold = 0.01)
      : silence_threshold_(silence_threshold) {}

  // Text comes from the clip's "text" tag. Confidence is 1.0 when the
  // clip's "language" tag equals `language`, 0.5 when it differs, and 0.0
  // for an untagged clip (whose text is empty).
  Transcript Transcribe(const audio::AudioClip& clip, const LanguageTag& language) override;

 private:
  double silence_threshold_;
};

class MockLanguageDetector : public LanguageDetector {
 public:
  static constexpr double kTaggedConfidence = 0.9;

  explicit MockLanguageDetector(std::vector<LanguageTag> languages,
                                double silence_threshold = 0.01);

  // The tagged language gets 0.9 and the other known languages split 0.1
  // evenly; an untagged clip gets a uniform distribution.
  std::vector<LanguageGuess> DetectLanguage(const audio::AudioClip& clip) override;

 private:
  std::vector<LanguageTag> languages_;
  double silence_threshold_;
};

class MockTranslator : public Translator {
 public:
  MockTranslator() = default;
  // Loads every "<source>-<target>.tsv" file in `dir`.
  explicit MockTranslator(const std::filesystem::path& dir);

  void AddLexicon(const LanguageTag& source, const LanguageTag& target, TranslationLexicon lex);

  // Identity for equal tags. Otherwise uses the source-target lexicon, or
  // the reverse of target-source, or passes the text through.
  std::string Translate(std::string_view text, const LanguageTag& source,
                        const LanguageTag& target) override;

 private:
  std::map<std::pair<std::string, std::string>, TranslationLexicon> lexicons_;
};

class MockEmotionAnalyzer : public EmotionAnalyzer {
 public:
  MockEmotionAnalyzer() = default;
  MockEmotionAnalyzer(std::map<std::string, EmotionScores> fixtures, EmotionLexicon lexicon);

  // Loads a JSON object mapping text to {joy, anger, sadness, fear,
  // disgust, sentiment}.
  static std::map<std::string, EmotionScores> LoadFixtures(const std::filesystem::path& path);

  // Exact fixture match first, keyword lexicon otherwise.
  EmotionScores AnalyzeEmotion(std::string_view text) override;

 private:
  std::map<std::string, EmotionScores> fixtures_;
  EmotionLexicon lexicon_;
};

Providers MakeMockProviders(const ProviderConfig& config);

}  // namespace voicecare::providers

#endif  // VOICECARE_PROVIDERS_MOCK_H_
