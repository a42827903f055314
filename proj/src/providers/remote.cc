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


#include "voicecare/providers/remote.h"

#include <atomic>
#include <cmath>

#include "httplib.h"
#include "voicecare/error.h"
#include "voicecare/providers/wire.h"

namespace voicecare::providers {
namespace {

std::atomic<std::uint64_t> g_requests{0};

[[noreturn]] void Unavailable(const std::string& what) {
  throw Error(ErrorCode::kProviderUnavailable, what);
}

// Wraps malformed-response parsing so that a broken peer surfaces as an
// unavailable provider rather than a JSON exception.
template <typename F>
auto Decode(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    Unavailable(path + ": malformed response: " + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kProviderUnavailable) throw;
    Unavailable(path + ": invalid response: " + e.detail());
  }
}

}  // namespace

std::uint64_t RemoteRequestCount() { return g_requests.load(); }

nlohmann::json PostJson(const std::string& base_url, const std::string& path,
                        const nlohmann::json& body, double timeout_seconds) {
  httplib::Client client(base_url);
  if (!client.is_valid()) {
    throw Error(ErrorCode::kInvalidArgument, "bad provider URL '" + base_url + "'");
  }
  const auto sec = static_cast<time_t>(timeout_seconds);
  const auto usec = static_cast<time_t>(std::lround((timeout_seconds - sec) * 1e6));
  client.set_connection_timeout(sec, usec);
  client.set_read_timeout(sec, usec);
  client.set_write_timeout(sec, usec);

  ++g_requests;
  auto res = client.Post(path, body.dump(), "application/json");
  if (!res) Unavailable(path + ": " + httplib::to_string(res.error()));
  if (res->status >= 500) Unavailable(path + ": HTTP " + std::to_string(res->status));

  nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
  if (res->status >= 400) {
    if (j.is_object() && j.contains("error") && j["error"].is_string()) {
      if (auto code = ErrorCodeFromName(j["error"].get<std::string>())) {
        throw Error(*code, j.value("message", std::string()));
      }
    }
    Unavailable(path + ": HTTP " + std::to_string(res->status));
  }
  if (j.is_discarded()) Unavailable(path + ": response is not JSON");
  return j;
}

Transcript RemoteSpeechToText::Transcribe(const audio::AudioClip& clip,
                                          const LanguageTag& language) {
  auto j = PostJson(base_url_, "/stt", {{"audio", EncodeAudio(clip)}, {"language", language}},
                    timeout_);
  return Decode("/stt", [&] {
    Transcript t = TranscriptFromJson(j);
    if (!(t.confidence >= 0.0 && t.confidence <= 1.0)) Unavailable("/stt: confidence range");
    return t;
  });
}

audio::AudioClip RemoteTextToSpeech::Synthesize(std::string_view text, const LanguageTag& language,
                                                double rate) {
  auto j = PostJson(base_url_, "/tts",
                    {{"text", std::string(text)}, {"language", language}, {"rate", rate}},
                    timeout_);
  return Decode("/tts", [&] {
    try {
      return DecodeAudio(j.at("audio").get<std::string>());
    } catch (const Error& e) {
      Unavailable("/tts: bad audio: " + e.detail());
    }
  });
}

std::string RemoteTranslator::Translate(std::string_view text, const LanguageTag& source,
                                        const LanguageTag& target) {
  auto j = PostJson(base_url_, "/translate",
                    {{"text", std::string(text)}, {"source", source}, {"target", target}},
                    timeout_);
  return Decode("/translate", [&] { return j.at("text").get<std::string>(); });
}

std::vector<LanguageGuess> RemoteLanguageDetector::DetectLanguage(const audio::AudioClip& clip) {
  auto j = PostJson(base_url_, "/detect", {{"audio", EncodeAudio(clip)}}, timeout_);
  return Decode("/detect", [&] {
    std::vector<LanguageGuess> guesses;
    for (const auto& g : j.at("guesses")) {
      guesses.push_back(GuessFromJson(g));
      if (!(guesses.back().confidence >= 0.0 && guesses.back().confidence <= 1.0)) {
        Unavailable("/detect: confidence out of range");
      }
    }
    if (guesses.empty()) Unavailable("/detect: empty guess list");
    SortGuesses(guesses);
    return guesses;
  });
}

EmotionScores RemoteEmotionAnalyzer::AnalyzeEmotion(std::string_view text) {
  auto j = PostJson(base_url_, "/emotion", {{"text", std::string(text)}}, timeout_);
  return Decode("/emotion", [&] { return j.get<EmotionScores>(); });
}

Providers MakeRemoteProviders(const std::string& base_url, double timeout_seconds) {
  Providers p;
  p.stt = std::make_shared<RemoteSpeechToText>(base_url, timeout_seconds);
  p.tts = std::make_shared<RemoteTextToSpeech>(base_url, timeout_seconds);
  p.translator = std::make_shared<RemoteTranslator>(base_url, timeout_seconds);
  p.detector = std::make_shared<RemoteLanguageDetector>(base_url, timeout_seconds);
  p.emotion = std::make_shared<RemoteEmotionAnalyzer>(base_url, timeout_seconds);
  return p;
}

}  // namespace voicecare::providers
