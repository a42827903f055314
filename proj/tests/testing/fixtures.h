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


// Shared record fixtures and a scratch directory helper.

#ifndef VOICECARE_TESTS_TESTING_FIXTURES_H_
#define VOICECARE_TESTS_TESTING_FIXTURES_H_

#include <filesystem>
#include <map>
#include <random>
#include <string>

#include "voicecare/audio/clip.h"
#include "voicecare/records/records.h"

namespace voicecare::testing {

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("voicecare-" + std::to_string(rd()) +
                                                      std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// The three answers of the Figure 4 test, in order.
inline providers::EmotionScores HappyScores() { return {0.87, 0.01, 0.04, 0.01, 0.01, 0.0}; }
inline providers::EmotionScores UnhappyScores() { return {0.09, 0.05, 0.72, 0.07, 0.06, 0.0}; }
inline providers::EmotionScores AngryScores() { return {0.02, 0.85, 0.04, 0.02, 0.02, 0.0}; }

inline records::AnswerRecord Answered(int position, const providers::EmotionScores& e,
                                      const std::string& text) {
  records::AnswerRecord a;
  a.question_id = "q" + std::to_string(position + 1);
  a.position = position;
  a.audio_ref = "answer-" + std::to_string(position + 1) + ".wav";
  a.transcript_user = providers::Transcript{text, providers::LanguageTag("fr"), 1.0};
  a.transcript_specialist = text;
  a.transcript_emotion_lang = text;
  a.emotion = e;
  return a;
}

// A completed three-answer record with its audio attachments.
inline records::SessionRecord FigureFourRecord(const std::string& id,
                                               records::Timestamp started = records::Now()) {
  records::SessionRecord r;
  r.id = id;
  r.questionnaire_id = "figure4";
  r.device_id = "robot-1";
  r.started_at = started;
  r.detected_language = providers::LanguageTag("fr");
  r.welcome_audio_ref = "welcome.wav";
  r.answers = {Answered(0, HappyScores(), "I'm so happy to live here"),
               Answered(1, UnhappyScores(), "I hate this world"),
               Answered(2, AngryScores(), "I can't tolerate this.")};
  auto agg = records::AggregateEmotions(r.answers);
  r.mean_emotion = agg.mean;
  r.final_label = agg.label;
  return r;
}

inline std::map<std::string, audio::AudioClip> FigureFourClips() {
  std::map<std::string, audio::AudioClip> clips;
  const std::string names[] = {"welcome.wav", "answer-1.wav", "answer-2.wav", "answer-3.wav"};
  int k = 1;
  for (const auto& name : names) {
    std::vector<std::int32_t> samples(200 * k);
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = static_cast<int>(i * 97 % 5000) - 2500;
    clips.emplace(name, audio::AudioClip(audio::AudioFormat{16000, 16, 1}, std::move(samples),
                                         {{"name", name}}));
    ++k;
  }
  return clips;
}

}  // namespace voicecare::testing

#endif  // VOICECARE_TESTS_TESTING_FIXTURES_H_
