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

#include "voicecare/providers/mock.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "voicecare/audio/convert.h"
#include "voicecare/error.h"
#include "voicecare/providers/wire.h"

namespace voicecare::providers {
namespace {

bool IsBlank(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](unsigned char c) { return c == ' ' || (c >= '\t' && c <= '\r'); });
}

// Decodes UTF-8 leniently: invalid bytes become single code points.
std::vector<char32_t> CodePoints(std::string_view text) {
  std::vector<char32_t> out;
  for (std::size_t i = 0; i < text.size();) {
    const auto c = static_cast<unsigned char>(text[i]);
    int len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 1;
    if (i + len > text.size()) len = 1;
    char32_t cp = len == 1 ? c : c & (0x3F >> (len - 1));
    for (int k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(text[i + k]) & 0x3F);
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string FormatRate(double rate) {
  std::ostringstream os;
  os << rate;
  return os.str();
}

}  // namespace

audio::AudioClip MockTextToSpeech::Synthesize(std::string_view text, const LanguageTag& language,
                                              double rate) {
  if (IsBlank(text)) throw Error(ErrorCode::kEmptyText, "nothing to synthesize");
  if (!(rate > 0.0)) throw Error(ErrorCode::kInvalidArgument, "speech rate must be positive");

  const auto& f = audio::kDriverFormat;
  const auto cps = CodePoints(text);
  const double seconds_per_char = kSecondsPerCharacter / rate;
  const auto total = static_cast<std::size_t>(
      std::llround(f.sample_rate_hz * seconds_per_char * static_cast<double>(cps.size())));
  const double peak = kAmplitude * f.max_sample();

  std::vector<std::int32_t> samples;
  samples.reserve(total * f.channels);
  double phase = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t ch = std::min(cps.size() - 1, static_cast<std::size_t>(
                                                         i / (f.sample_rate_hz * seconds_per_char)));
    const double freq = 220.0 + static_cast<double>(cps[ch] % 24) * 40.0;
    phase += 2.0 * std::numbers::pi * freq / f.sample_rate_hz;
    const auto v = static_cast<std::int32_t>(std::lround(peak * std::sin(phase)));
    for (int c = 0; c < f.channels; ++c) samples.push_back(v);
  }
  audio::Metadata meta{{kTextTag, std::string(text)},
                       {kLanguageTag, language.code()},
                       {kRateTag, FormatRate(rate)}};
  return audio::AudioClip(f, std::move(samples), std::move(meta));
}

Transcript MockSpeechToText::Transcribe(const audio::AudioClip& clip, const LanguageTag& language) {
  if (audio::RmsLevel(clip) < silence_threshold_) {
    throw Error(ErrorCode::kNoSpeech, "clip is silent");
  }
  const std::string spoken = clip.tag(kLanguageTag);
  if (clip.metadata().count(kTextTag) == 0) return Transcript{"", language, 0.0};
  return Transcript{clip.tag(kTextTag), language, spoken == language.code() ? 1.0 : 0.5};
}

MockLanguageDetector::MockLanguageDetector(std::vector<LanguageTag> languages,
                                           double silence_threshold)
    : languages_(std::move(languages)), silence_threshold_(silence_threshold) {
  if (languages_.empty()) throw Error(ErrorCode::kInvalidArgument, "no languages configured");
}

std::vector<LanguageGuess> MockLanguageDetector::DetectLanguage(const audio::AudioClip& clip) {
  if (audio::RmsLevel(clip) < silence_threshold_) {
    throw Error(ErrorCode::kNoSpeech, "clip is silent");
  }
  std::set<LanguageTag> known(languages_.begin(), languages_.end());
  const std::string tagged = clip.tag(kLanguageTag);
  const bool has_tag = IsValidLanguageCode(tagged);
  if (has_tag) known.insert(LanguageTag(tagged));

  std::vector<LanguageGuess> guesses;
  if (!has_tag || known.size() == 1) {
    const double share = has_tag ? 1.0 : 1.0 / static_cast<double>(known.size());
    for (const auto& tag : known) guesses.push_back({tag, share});
  } else {
    const double rest = 0.1 / static_cast<double>(known.size() - 1);
    for (const auto& tag : known) {
      guesses.push_back({tag, tag.code() == tagged ? kTaggedConfidence : rest});
    }
  }
  SortGuesses(guesses);
  return guesses;
}

MockTranslator::MockTranslator(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kNotFound, "lexicon directory " + dir.string() + " not found");
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".tsv") continue;
    const std::string stem = entry.path().stem().string();
    const auto dash = stem.find('-');
    if (dash == std::string::npos) continue;
    const std::string src = stem.substr(0, dash);
    const std::string tgt = stem.substr(dash + 1);
    if (!IsValidLanguageCode(src) || !IsValidLanguageCode(tgt)) continue;
    AddLexicon(LanguageTag(src), LanguageTag(tgt), TranslationLexicon::Load(entry.path()));
  }
}

void MockTranslator::AddLexicon(const LanguageTag& source, const LanguageTag& target,
                                TranslationLexicon lex) {
  lexicons_[{source.code(), target.code()}] = std::move(lex);
}

std::string MockTranslator::Translate(std::string_view text, const LanguageTag& source,
                                      const LanguageTag& target) {
  if (source == target) return std::string(text);
  auto it = lexicons_.find({source.code(), target.code()});
  if (it != lexicons_.end()) return it->second.Apply(text);
  auto rev = lexicons_.find({target.code(), source.code()});
  if (rev != lexicons_.end()) return rev->second.Reversed().Apply(text);
  return std::string(text);
}

MockEmotionAnalyzer::MockEmotionAnalyzer(std::map<std::string, EmotionScores> fixtures,
                                         EmotionLexicon lexicon)
    : fixtures_(std::move(fixtures)), lexicon_(std::move(lexicon)) {}

std::map<std::string, EmotionScores> MockEmotionAnalyzer::LoadFixtures(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open fixtures " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, path.string() + ": " + e.what());
  }
  std::map<std::string, EmotionScores> out;
  for (const auto& [text, scores] : j.items()) {
    try {
      out[text] = scores.get<EmotionScores>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInvalidArgument, path.string() + ": '" + text + "': " + e.what());
    }
  }
  return out;
}

EmotionScores MockEmotionAnalyzer::AnalyzeEmotion(std::string_view text) {
  if (IsBlank(text)) throw Error(ErrorCode::kEmptyText, "nothing to analyze");
  auto it = fixtures_.find(std::string(text));
  if (it != fixtures_.end()) return it->second;
  return lexicon_.Score(text);
}

Providers MakeMockProviders(const ProviderConfig& config) {
  Providers p;
  p.tts = std::make_shared<MockTextToSpeech>();
  p.stt = std::make_shared<MockSpeechToText>(config.silence_threshold);
  p.detector =
      std::make_shared<MockLanguageDetector>(config.supported_languages, config.silence_threshold);
  p.translator = config.translation_lexicon_dir
                     ? std::make_shared<MockTranslator>(*config.translation_lexicon_dir)
                     : std::make_shared<MockTranslator>();
  std::map<std::string, EmotionScores> fixtures;
  if (config.emotion_fixtures) fixtures = MockEmotionAnalyzer::LoadFixtures(*config.emotion_fixtures);
  EmotionLexicon lexicon;
  if (config.emotion_lexicon) lexicon = EmotionLexicon::Load(*config.emotion_lexicon);
  p.emotion = std::make_shared<MockEmotionAnalyzer>(std::move(fixtures), std::move(lexicon));
  return p;
}

}  // namespace voicecare::providers
