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

#include "voicecare/providers/wire.h"

#include <sodium.h>

#include "voicecare/audio/wav.h"
#include "voicecare/error.h"

namespace voicecare::providers {

void to_json(nlohmann::json& j, const LanguageTag& tag) { j = tag.code(); }

LanguageTag TagFromJson(const nlohmann::json& j) { return LanguageTag(j.get<std::string>()); }

void to_json(nlohmann::json& j, const LanguageGuess& guess) {
  j = nlohmann::json{{"code", guess.language.code()}, {"confidence", guess.confidence}};
}

void to_json(nlohmann::json& j, const Transcript& t) {
  j = nlohmann::json{
      {"text", t.text}, {"language", t.language.code()}, {"confidence", t.confidence}};
}

void to_json(nlohmann::json& j, const EmotionScores& s) {
  j = nlohmann::json{{"joy", s.joy},         {"anger", s.anger},     {"sadness", s.sadness},
                     {"fear", s.fear},       {"disgust", s.disgust}, {"sentiment", s.sentiment}};
}

void from_json(const nlohmann::json& j, EmotionScores& s) {
  s.joy = j.at("joy").get<double>();
  s.anger = j.at("anger").get<double>();
  s.sadness = j.at("sadness").get<double>();
  s.fear = j.at("fear").get<double>();
  s.disgust = j.at("disgust").get<double>();
  s.sentiment = j.value("sentiment", 0.0);
  Validate(s);
}

LanguageGuess GuessFromJson(const nlohmann::json& j) {
  return LanguageGuess{LanguageTag(j.at("code").get<std::string>()),
                       j.at("confidence").get<double>()};
}

Transcript TranscriptFromJson(const nlohmann::json& j) {
  return Transcript{j.at("text").get<std::string>(),
                    LanguageTag(j.at("language").get<std::string>()),
                    j.at("confidence").get<double>()};
}

std::string Base64Encode(std::span<const std::uint8_t> bytes) {
  constexpr int kVariant = sodium_base64_VARIANT_ORIGINAL;
  std::string out(sodium_base64_ENCODED_LEN(bytes.size(), kVariant), '\0');
  sodium_bin2base64(out.data(), out.size(), bytes.data(), bytes.size(), kVariant);
  out.resize(out.size() - 1);  // trailing NUL
  return out;
}

std::vector<std::uint8_t> Base64Decode(std::string_view text) {
  std::vector<std::uint8_t> out(text.size() / 4 * 3 + 3);
  std::size_t len = 0;
  const char* end = nullptr;
  if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(), nullptr, &len, &end,
                        sodium_base64_VARIANT_ORIGINAL) != 0 ||
      end != text.data() + text.size()) {
    throw Error(ErrorCode::kInvalidArgument, "malformed base64 payload");
  }
  out.resize(len);
  return out;
}

std::string EncodeAudio(const audio::AudioClip& clip) {
  return Base64Encode(audio::WriteWav(clip));
}

audio::AudioClip DecodeAudio(std::string_view base64_wav) {
  return audio::ParseWav(Base64Decode(base64_wav));
}

}  // namespace voicecare::providers
