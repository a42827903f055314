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

#ifndef VOICECARE_PROVIDERS_PROVIDER_H_
#define VOICECARE_PROVIDERS_PROVIDER_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "voicecare/audio/clip.h"
#include "voicecare/providers/types.h"

namespace voicecare::providers {

// Capability contracts. Implementations are stateless after construction
// and may be called from several sessions at once. Remote implementations
// raise Error(kProviderUnavailable) on transport failure.

class SpeechToText {
 public:
  virtual ~SpeechToText() = default;
  // Throws Error(kNoSpeech) for a silent clip.
  virtual Transcript Transcribe(const audio::AudioClip& clip, const LanguageTag& language) = 0;
};

class TextToSpeech {
 public:
  virtual ~TextToSpeech() = default;
  // Returns driver-format audio whose length scales with text length / rate.
  // Throws Error(kEmptyText) for blank text.
  virtual audio::AudioClip Synthesize(std::string_view text, const LanguageTag& language,
                                      double rate) = 0;
};

class Translator {
 public:
  virtual ~Translator() = default;
  virtual std::string Translate(std::string_view text, const LanguageTag& source,
                                const LanguageTag& target) = 0;
};

class LanguageDetector {
 public:
  virtual ~LanguageDetector() = default;
  // Non-empty, sorted by confidence descending then code ascending.
  // Throws Error(kNoSpeech) for a silent clip.
  virtual std::vector<LanguageGuess> DetectLanguage(const audio::AudioClip& clip) = 0;
};

class EmotionAnalyzer {
 public:
  virtual ~EmotionAnalyzer() = default;
  // Expects English text. Throws Error(kEmptyText) for blank text.
  virtual EmotionScores AnalyzeEmotion(std::string_view text) = 0;
};

struct Providers {
  std::shared_ptr<SpeechToText> stt;
  std::shared_ptr<TextToSpeech> tts;
  std::shared_ptr<Translator> translator;
  std::shared_ptr<LanguageDetector> detector;
  std::shared_ptr<EmotionAnalyzer> emotion;
};

// Highest confidence wins; ties go to the lexicographically smallest code.
// Throws Error(kEmptyGuessList) for an empty list.
LanguageTag SelectLanguage(std::span<const LanguageGuess> guesses);

// Orders guesses by confidence descending, then code ascending.
void SortGuesses(std::vector<LanguageGuess>& guesses);

struct ProviderConfig {
  enum class Mode { kMock, kRemote };

  Mode mode = Mode::kMock;
  // Required in remote mode, e.g. "http://127.0.0.1:8090".
  std::optional<std::string> remote_base_url;
  double remote_timeout_seconds = 30.0;

  // Mock mode data. Directory of "<source>-<target>.tsv" translation
  // lexicons, a JSON map text -> score vector, and an emotion keyword
  // lexicon. Each is optional.
  std::optional<std::filesystem::path> translation_lexicon_dir;
  std::optional<std::filesystem::path> emotion_fixtures;
  std::optional<std::filesystem::path> emotion_lexicon;
  std::vector<LanguageTag> supported_languages = {LanguageTag("en"), LanguageTag("es"),
                                                  LanguageTag("fr")};
  double silence_threshold = 0.01;
};

// Throws Error(kInvalidArgument) for remote mode without a base URL.
void Validate(const ProviderConfig& config);

// Builds the mock or the remote stack according to config.mode.
Providers MakeProviders(const ProviderConfig& config);

}  // namespace voicecare::providers

#endif  // VOICECARE_PROVIDERS_PROVIDER_H_
