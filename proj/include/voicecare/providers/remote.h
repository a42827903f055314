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


// Client side of the neutral provider protocol. Every call is one HTTP POST
// with a JSON body; see docs/provider-protocol.md.

#ifndef VOICECARE_PROVIDERS_REMOTE_H_
#define VOICECARE_PROVIDERS_REMOTE_H_

#include <cstdint>
#include <string>

#include "json.hpp"
#include "voicecare/providers/provider.h"

namespace voicecare::providers {

// Total HTTP requests issued by remote providers in this process.
std::uint64_t RemoteRequestCount();

// Posts `body` to base_url + path and returns the decoded response.
// Transport failures and 5xx responses raise Error(kProviderUnavailable);
// 4xx responses carrying {"error": name} re-raise that error code.
nlohmann::json PostJson(const std::string& base_url, const std::string& path,
                        const nlohmann::json& body, double timeout_seconds);

class RemoteSpeechToText : public SpeechToText {
 public:
  RemoteSpeechToText(std::string base_url, double timeout_seconds)
      : base_url_(std::move(base_url)), timeout_(timeout_seconds) {}
  Transcript Transcribe(const audio::AudioClip& clip, const LanguageTag& language) override;

 private:
  std::string base_url_;
  double timeout_;
};

class RemoteTextToSpeech : public TextToSpeech {
 public:
  RemoteTextToSpeech(std::string base_url, double timeout_seconds)
      : base_url_(std::move(base_url)), timeout_(timeout_seconds) {}
  audio::AudioClip Synthesize(std::string_view text, const LanguageTag& language,
                              double rate) override;

 private:
  std::string base_url_;
  double timeout_;
};

class RemoteTranslator : public Translator {
 public:
  RemoteTranslator(std::string base_url, double timeout_seconds)
      : base_url_(std::move(base_url)), timeout_(timeout_seconds) {}
  std::string Translate(std::string_view text, const LanguageTag& source,
                        const LanguageTag& target) override;

 private:
  std::string base_url_;
  double timeout_;
};

class RemoteLanguageDetector : public LanguageDetector {
 public:
  RemoteLanguageDetector(std::string base_url, double timeout_seconds)
      : base_url_(std::move(base_url)), timeout_(timeout_seconds) {}
  std::vector<LanguageGuess> DetectLanguage(const audio::AudioClip& clip) override;

 private:
  std::string base_url_;
  double timeout_;
};

class RemoteEmotionAnalyzer : public EmotionAnalyzer {
 public:
  RemoteEmotionAnalyzer(std::string base_url, double timeout_seconds)
      : base_url_(std::move(base_url)), timeout_(timeout_seconds) {}
  EmotionScores AnalyzeEmotion(std::string_view text) override;

 private:
  std::string base_url_;
  double timeout_;
};

Providers MakeRemoteProviders(const std::string& base_url, double timeout_seconds);

}  // namespace voicecare::providers

#endif  // VOICECARE_PROVIDERS_REMOTE_H_
