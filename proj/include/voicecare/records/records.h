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


// Session and answer records: the persisted EHR entries.

#ifndef VOICECARE_RECORDS_RECORDS_H_
#define VOICECARE_RECORDS_RECORDS_H_

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "voicecare/providers/types.h"

namespace voicecare::records {

inline constexpr int kSessionSchemaVersion = 1;

enum class EmotionLabel { kJoy, kAnger, kSadness, kFear, kDisgust };

// "JOY", "ANGER", ...
std::string_view LabelName(EmotionLabel label);
std::optional<EmotionLabel> LabelFromName(std::string_view name);

// Argmax over the five emotions; ties go to the earliest in the order joy,
// anger, sadness, fear, disgust.
EmotionLabel FinalEmotion(const providers::EmotionScores& scores);

struct AnswerRecord {
  std::string question_id;
  int position = 0;
  std::optional<std::string> audio_ref;  // file name inside the session
  std::optional<providers::Transcript> transcript_user;
  std::optional<std::string> transcript_specialist;
  std::optional<std::string> transcript_emotion_lang;
  std::optional<providers::EmotionScores> emotion;
  int repeats_used = 0;
  bool no_response = false;

  friend bool operator==(const AnswerRecord&, const AnswerRecord&) = default;
};

// A no_response answer after `repeats` silent repeats.
AnswerRecord NoResponse(std::string question_id, int position, int repeats);

struct Aggregate {
  std::optional<providers::EmotionScores> mean;
  std::optional<EmotionLabel> label;
};

// Field-wise arithmetic mean (sentiment included) over answers that carry
// emotion scores; both empty when none do.
Aggregate AggregateEmotions(std::span<const AnswerRecord> answers);

enum class SessionStatus { kCompleted, kAborted };

using Timestamp = std::chrono::time_point<std::chrono::system_clock, std::chrono::microseconds>;

Timestamp Now();
// "2026-10-19T08:30:00.123456Z"
std::string FormatTimestamp(Timestamp t);
// Throws Error(kInvalidArgument).
Timestamp ParseTimestamp(std::string_view text);

struct SessionRecord {
  std::string id;
  std::string questionnaire_id;
  std::string device_id;
  Timestamp started_at{};
  providers::LanguageTag detected_language{"en"};
  // Set when no welcome reply was heard and the specialist language was
  // used instead.
  bool language_fallback = false;
  std::optional<std::string> welcome_audio_ref;
  std::vector<AnswerRecord> answers;
  std::optional<providers::EmotionScores> mean_emotion;
  std::optional<EmotionLabel> final_label;
  std::optional<std::string> advice;
  SessionStatus status = SessionStatus::kCompleted;
  std::optional<std::string> abort_reason;

  friend bool operator==(const SessionRecord&, const SessionRecord&) = default;
};

// Invariant violations; empty when the record is consistent. A non-negative
// `question_count` or `max_repeats` is also checked.
std::vector<std::string> Check(const SessionRecord& record, int question_count = -1,
                               int max_repeats = -1);

nlohmann::json ToJson(const AnswerRecord& answer);
nlohmann::json ToJson(const SessionRecord& record);
// Throws Error(kMalformedFile) for a document that is not a session record.
SessionRecord SessionFromJson(const nlohmann::json& j);

// Emotion per question in position order; empty for unanswered ones.
std::vector<std::pair<int, std::optional<providers::EmotionScores>>> EmotionSeries(
    const SessionRecord& record);

}  // namespace voicecare::records

#endif  // VOICECARE_RECORDS_RECORDS_H_
