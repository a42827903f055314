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

// JSON forms of the provider value types, shared by the remote protocol and
// the record manifests. See docs/provider-protocol.md.

#ifndef VOICECARE_PROVIDERS_WIRE_H_
#define VOICECARE_PROVIDERS_WIRE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "voicecare/audio/clip.h"
#include "voicecare/providers/types.h"

namespace voicecare::providers {

void to_json(nlohmann::json& j, const LanguageTag& tag);
void to_json(nlohmann::json& j, const LanguageGuess& guess);
void to_json(nlohmann::json& j, const Transcript& t);
void to_json(nlohmann::json& j, const EmotionScores& s);
void from_json(const nlohmann::json& j, EmotionScores& s);

// LanguageTag has no default state, so these replace from_json.
LanguageTag TagFromJson(const nlohmann::json& j);
LanguageGuess GuessFromJson(const nlohmann::json& j);
Transcript TranscriptFromJson(const nlohmann::json& j);

std::string Base64Encode(std::span<const std::uint8_t> bytes);
// Throws Error(kInvalidArgument) on malformed input.
std::vector<std::uint8_t> Base64Decode(std::string_view text);

// WAV bytes, base64 encoded.
std::string EncodeAudio(const audio::AudioClip& clip);
audio::AudioClip DecodeAudio(std::string_view base64_wav);

}  // namespace voicecare::providers

#endif  // VOICECARE_PROVIDERS_WIRE_H_
