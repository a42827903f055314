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

#include "voicecare/providers/provider.h"

#include <algorithm>

#include "voicecare/error.h"
#include "voicecare/providers/mock.h"
#include "voicecare/providers/remote.h"

namespace voicecare::providers {

bool IsValidLanguageCode(std::string_view code) {
  if (code.size() < 2 || code.size() > 3) return false;
  return std::all_of(code.begin(), code.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

LanguageTag::LanguageTag(std::string code) : code_(std::move(code)) {
  if (!IsValidLanguageCode(code_)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid language tag '" + code_ + "'");
  }
}

void Validate(const EmotionScores& s) {
  for (std::size_t k = 0; k < kEmotionNames.size(); ++k) {
    const double v = s.emotions()[k];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(kEmotionNames[k]) + " score " + std::to_string(v) +
                      " outside [0, 1]");
    }
  }
  if (!(s.sentiment >= -1.0 && s.sentiment <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sentiment outside [-1, 1]");
  }
}

void SortGuesses(std::vector<LanguageGuess>& guesses) {
  std::stable_sort(guesses.begin(), guesses.end(),
                   [](const LanguageGuess& a, const LanguageGuess& b) {
                     if (a.confidence != b.confidence) return a.confidence > b.confidence;
                     return a.language < b.language;
                   });
}

LanguageTag SelectLanguage(std::span<const LanguageGuess> guesses) {
  if (guesses.empty()) throw Error(ErrorCode::kEmptyGuessList, "no language guesses");
  const LanguageGuess* best = &guesses.front();
  for (const auto& g : guesses) {
    if (g.confidence > best->confidence ||
        (g.confidence == best->confidence && g.language < best->language)) {
      best = &g;
    }
  }
  return best->language;
}

void Validate(const ProviderConfig& config) {
  if (config.mode == ProviderConfig::Mode::kRemote &&
      (!config.remote_base_url || config.remote_base_url->empty())) {
    throw Error(ErrorCode::kInvalidArgument, "remote provider mode requires a base URL");
  }
  if (config.supported_languages.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "at least one supported language is required");
  }
}

Providers MakeProviders(const ProviderConfig& config) {
  Validate(config);
  if (config.mode == ProviderConfig::Mode::kRemote) {
    return MakeRemoteProviders(*config.remote_base_url, config.remote_timeout_seconds);
  }
  return MakeMockProviders(config);
}

}  // namespace voicecare::providers
