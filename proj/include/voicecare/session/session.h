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


// The questionnaire iterator: welcome and language detection, then
// ask / record / transcribe / translate / score for each question with
// repeat-on-no-answer, then aggregation and persistence.

#ifndef VOICECARE_SESSION_SESSION_H_
#define VOICECARE_SESSION_SESSION_H_

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "voicecare/capture/record.h"
#include "voicecare/providers/provider.h"
#include "voicecare/questionnaire/questionnaire.h"
#include "voicecare/records/records.h"
#include "voicecare/store/store.h"

namespace voicecare::session {

inline constexpr int kMaxRepeatsLimit = 5;

struct SessionPolicy {
  int max_repeats = 2;
  capture::RecordPolicy record;
  providers::LanguageTag emotion_language{"en"};
  double speech_rate = 1.0;
};

// Throws Error(kInvalidArgument).
void Validate(const SessionPolicy& policy);

struct RecordingSlot {
  enum class Kind { kWelcome, kQuestion };
  Kind kind = Kind::kQuestion;
  int position = 0;  // question position; 0 for the welcome
  int attempt = 0;   // 0 for the first try, 1 for the first repeat, ...
};

// The robot's speaker and microphone.
class AudioIo {
 public:
  virtual ~AudioIo() = default;
  virtual void Play(const audio::AudioClip& clip) = 0;
  // Microphone audio following a prompt.
  virtual std::unique_ptr<capture::ChunkSource> OpenChunkSource(const RecordingSlot& slot) = 0;
};

// Plays into a discarding sink and answers from per-slot clips. Slots
// without a clip hear silence.
class ScriptedAudioIo : public AudioIo {
 public:
  explicit ScriptedAudioIo(const capture::RecordPolicy& policy = {});

  // Replies to the welcome prompt, one per attempt.
  void SetWelcomeReplies(std::vector<audio::AudioClip> replies);
  // Answers to the question at `position`, one per attempt.
  void SetAnswers(int position, std::vector<audio::AudioClip> attempts);

  void Play(const audio::AudioClip& clip) override;
  std::unique_ptr<capture::ChunkSource> OpenChunkSource(const RecordingSlot& slot) override;

  const std::vector<audio::AudioClip>& played() const { return played_; }
  const std::vector<RecordingSlot>& opened() const { return opened_; }

 private:
  std::size_t chunk_frames_;
  std::vector<audio::AudioClip> welcome_;
  std::map<int, std::vector<audio::AudioClip>> answers_;
  capture::DiscardingSink sink_;
  std::vector<audio::AudioClip> played_;
  std::vector<RecordingSlot> opened_;
};

// Wall time per pipeline stage in seconds.
struct StageTimings {
  double tts = 0;
  double playback = 0;
  double record = 0;
  double stt = 0;
  double translate = 0;
  double emotion = 0;
  double store = 0;

  double total() const { return tts + playback + record + stt + translate + emotion + store; }
};

inline constexpr const char* kStageNames[] = {"tts",       "playback", "record", "stt",
                                              "translate", "emotion",  "store"};
std::array<double, 7> StageValues(const StageTimings& t);

struct QuestionTiming {
  std::string question_id;
  int position = 0;
  StageTimings stages;
};

struct LanguageDetection {
  providers::LanguageTag language{"en"};
  bool fallback = false;
  int attempts = 0;
  std::optional<audio::AudioClip> reply;  // the reply that was used
};

struct SessionResult {
  records::SessionRecord record;
  StageTimings welcome;
  std::vector<QuestionTiming> questions;
  double commit_seconds = 0;
};

// Raised when a provider or the audio device fails mid-session. The aborted
// record, padded with no_response answers, has already been persisted.
class SessionAborted : public Error {
 public:
  SessionAborted(ErrorCode cause, const std::string& message, records::SessionRecord record)
      : Error(cause, message), record_(std::move(record)) {}
  const records::SessionRecord& record() const { return record_; }

 private:
  records::SessionRecord record_;
};

class SessionEngine {
 public:
  // `store` may be null, in which case nothing is persisted.
  SessionEngine(providers::Providers providers, SessionPolicy policy, store::Store* store);

  // Prompts are read from `prompts` when its language matches the user's,
  // and synthesized live otherwise.
  void SetPromptCache(std::optional<questionnaire::PromptCache> prompts) {
    prompts_ = std::move(prompts);
  }

  // Runs one session and persists it before returning. Throws
  // SessionAborted on provider or device failure.
  SessionResult Run(const questionnaire::Questionnaire& q, AudioIo& io,
                    const std::string& device_id, std::optional<std::string> session_id = {});

  // Individual steps, exposed for testing.
  LanguageDetection DetectUserLanguage(const questionnaire::Questionnaire& q, AudioIo& io,
                                       StageTimings& timings);
  records::AnswerRecord AskQuestion(const questionnaire::Question& question,
                                    const providers::LanguageTag& specialist_language,
                                    const providers::LanguageTag& user_language, AudioIo& io,
                                    StageTimings& timings, store::SessionWriter* writer);

 private:
  audio::AudioClip Prompt(const std::string& cache_key, const std::string& text,
                          const providers::LanguageTag& specialist_language,
                          const providers::LanguageTag& language, StageTimings& timings);

  providers::Providers providers_;
  SessionPolicy policy_;
  store::Store* store_;
  std::optional<questionnaire::PromptCache> prompts_;
};

}  // namespace voicecare::session

#endif  // VOICECARE_SESSION_SESSION_H_
