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


#include "voicecare/session/session.h"

#include <chrono>
#include <random>

#include "voicecare/audio/wav.h"

namespace voicecare::session {
namespace {

using providers::LanguageTag;

// Adds the lifetime of the object to `slot`.
class StageTimer {
 public:
  explicit StageTimer(double& slot) : slot_(slot), start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    slot_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  double& slot_;
  std::chrono::steady_clock::time_point start_;
};

bool IsBlank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos;
}

bool Aborts(ErrorCode code) {
  return code == ErrorCode::kProviderUnavailable || code == ErrorCode::kSourceFailure ||
         code == ErrorCode::kSinkFailure;
}

std::string LocalSessionId() {
  std::random_device rd;
  return "local-" + std::to_string(rd()) + std::to_string(rd());
}

}  // namespace

void Validate(const SessionPolicy& policy) {
  if (policy.max_repeats < 0 || policy.max_repeats > kMaxRepeatsLimit) {
    throw Error(ErrorCode::kInvalidArgument,
                "max_repeats must be in [0, " + std::to_string(kMaxRepeatsLimit) + "]");
  }
  if (!(policy.speech_rate > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "speech_rate must be positive");
  }
  capture::Validate(policy.record);
}

std::array<double, 7> StageValues(const StageTimings& t) {
  return {t.tts, t.playback, t.record, t.stt, t.translate, t.emotion, t.store};
}

// ScriptedAudioIo

ScriptedAudioIo::ScriptedAudioIo(const capture::RecordPolicy& policy)
    : chunk_frames_(policy.chunk_frames(audio::kDriverFormat)) {}

void ScriptedAudioIo::SetWelcomeReplies(std::vector<audio::AudioClip> replies) {
  welcome_ = std::move(replies);
}

void ScriptedAudioIo::SetAnswers(int position, std::vector<audio::AudioClip> attempts) {
  answers_[position] = std::move(attempts);
}

void ScriptedAudioIo::Play(const audio::AudioClip& clip) {
  capture::Playback(clip, sink_);
  played_.push_back(clip);
}

std::unique_ptr<capture::ChunkSource> ScriptedAudioIo::OpenChunkSource(const RecordingSlot& slot) {
  opened_.push_back(slot);
  const std::vector<audio::AudioClip>* clips = nullptr;
  if (slot.kind == RecordingSlot::Kind::kWelcome) {
    clips = &welcome_;
  } else if (auto it = answers_.find(slot.position); it != answers_.end()) {
    clips = &it->second;
  }
  audio::AudioClip clip = audio::AudioClip::Silence(audio::kDriverFormat, 0);
  if (clips && slot.attempt < static_cast<int>(clips->size())) clip = (*clips)[slot.attempt];
  return std::make_unique<capture::FileChunkSource>(clip, chunk_frames_);
}

// SessionEngine

SessionEngine::SessionEngine(providers::Providers providers, SessionPolicy policy,
                             store::Store* store)
    : providers_(std::move(providers)), policy_(std::move(policy)), store_(store) {
  Validate(policy_);
  if (!providers_.stt || !providers_.tts || !providers_.translator || !providers_.detector ||
      !providers_.emotion) {
    throw Error(ErrorCode::kInvalidArgument, "incomplete provider bundle");
  }
}

audio::AudioClip SessionEngine::Prompt(const std::string& cache_key, const std::string& text,
                                       const LanguageTag& specialist_language,
                                       const LanguageTag& language, StageTimings& timings) {
  if (prompts_ && prompts_->language == language) {
    std::optional<std::filesystem::path> file;
    if (cache_key == "welcome") {
      file = prompts_->welcome;
    } else if (auto it = prompts_->questions.find(cache_key); it != prompts_->questions.end()) {
      file = it->second;
    }
    if (file) {
      StageTimer timer(timings.tts);
      return audio::ReadWavFile(*file);
    }
  }
  std::string localized = text;
  if (language != specialist_language) {
    StageTimer timer(timings.translate);
    localized = providers_.translator->Translate(text, specialist_language, language);
  }
  StageTimer timer(timings.tts);
  return providers_.tts->Synthesize(localized, language, policy_.speech_rate);
}

LanguageDetection SessionEngine::DetectUserLanguage(const questionnaire::Questionnaire& q,
                                                    AudioIo& io, StageTimings& timings) {
  const auto prompt =
      Prompt("welcome", q.welcome_text, q.specialist_language, q.specialist_language, timings);
  for (int attempt = 0; attempt <= policy_.max_repeats; ++attempt) {
    {
      StageTimer timer(timings.playback);
      io.Play(prompt);
    }
    capture::RecordingOutcome outcome;
    {
      StageTimer timer(timings.record);
      auto source = io.OpenChunkSource({RecordingSlot::Kind::kWelcome, 0, attempt});
      outcome = capture::RecordAnswer(*source, policy_.record);
    }
    if (!outcome.answered()) continue;
    std::vector<providers::LanguageGuess> guesses;
    try {
      StageTimer timer(timings.stt);
      guesses = providers_.detector->DetectLanguage(outcome.answer().clip);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kNoSpeech) continue;
      throw;
    }
    return {providers::SelectLanguage(guesses), false, attempt + 1, outcome.answer().clip};
  }
  return {q.specialist_language, true, policy_.max_repeats + 1, std::nullopt};
}

records::AnswerRecord SessionEngine::AskQuestion(const questionnaire::Question& question,
                                                 const LanguageTag& specialist_language,
                                                 const LanguageTag& user_language, AudioIo& io,
                                                 StageTimings& timings,
                                                 store::SessionWriter* writer) {
  // Synthesized once and replayed on repeats.
  const auto prompt =
      Prompt(question.id, question.text, specialist_language, user_language, timings);
  const LanguageTag& emotion_language = policy_.emotion_language;

  for (int attempt = 0; attempt <= policy_.max_repeats; ++attempt) {
    {
      StageTimer timer(timings.playback);
      io.Play(prompt);
    }
    capture::RecordingOutcome outcome;
    {
      StageTimer timer(timings.record);
      auto source =
          io.OpenChunkSource({RecordingSlot::Kind::kQuestion, question.position, attempt});
      outcome = capture::RecordAnswer(*source, policy_.record);
    }
    if (!outcome.answered()) continue;
    const audio::AudioClip& clip = outcome.answer().clip;

    providers::Transcript transcript{"", user_language, 0.0};
    try {
      StageTimer timer(timings.stt);
      transcript = providers_.stt->Transcribe(clip, user_language);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kNoSpeech) continue;
      throw;
    }
    // Sound without recognizable words counts as no answer.
    if (IsBlank(transcript.text)) continue;

    std::string specialist_text = transcript.text;
    std::string emotion_text = transcript.text;
    {
      StageTimer timer(timings.translate);
      if (user_language != specialist_language) {
        specialist_text =
            providers_.translator->Translate(transcript.text, user_language, specialist_language);
      }
      if (emotion_language == specialist_language) {
        emotion_text = specialist_text;
      } else if (emotion_language != user_language) {
        emotion_text =
            providers_.translator->Translate(transcript.text, user_language, emotion_language);
      }
    }
    providers::EmotionScores scores;
    {
      StageTimer timer(timings.emotion);
      scores = providers_.emotion->AnalyzeEmotion(emotion_text);
    }
    std::string audio_ref = store::AnswerAudioName(question.position);
    if (writer) {
      StageTimer timer(timings.store);
      audio_ref = writer->AddAudio(audio_ref, clip);
    }
    records::AnswerRecord answer;
    answer.question_id = question.id;
    answer.position = question.position;
    answer.audio_ref = audio_ref;
    answer.transcript_user = transcript;
    answer.transcript_specialist = specialist_text;
    answer.transcript_emotion_lang = emotion_text;
    answer.emotion = scores;
    answer.repeats_used = attempt;
    return answer;
  }
  return records::NoResponse(question.id, question.position, policy_.max_repeats);
}

SessionResult SessionEngine::Run(const questionnaire::Questionnaire& q, AudioIo& io,
                                 const std::string& device_id,
                                 std::optional<std::string> session_id) {
  questionnaire::Validate(q);
  SessionResult result;
  records::SessionRecord& r = result.record;
  r.id = session_id ? *session_id : store_ ? store_->NewSessionId() : LocalSessionId();
  r.questionnaire_id = q.id;
  r.device_id = device_id;
  r.started_at = records::Now();
  r.detected_language = q.specialist_language;

  std::optional<store::SessionWriter> writer;
  if (store_) writer.emplace(store_->BeginSession(r.id));
  store::SessionWriter* w = writer ? &*writer : nullptr;

  auto finish = [&] {
    auto agg = records::AggregateEmotions(r.answers);
    r.mean_emotion = agg.mean;
    r.final_label = agg.label;
    StageTimer timer(result.commit_seconds);
    if (w) w->Commit(r);
  };

  try {
    LanguageDetection detection = DetectUserLanguage(q, io, result.welcome);
    r.detected_language = detection.language;
    r.language_fallback = detection.fallback;
    if (detection.reply) {
      StageTimer timer(result.welcome.store);
      r.welcome_audio_ref = w ? w->AddAudio(store::kWelcomeAudio, *detection.reply)
                              : std::string(store::kWelcomeAudio);
    }
    for (const auto& question : q.questions) {
      QuestionTiming timing{question.id, question.position, {}};
      r.answers.push_back(
          AskQuestion(question, q.specialist_language, r.detected_language, io, timing.stages, w));
      result.questions.push_back(timing);
    }
  } catch (const Error& e) {
    if (!Aborts(e.code())) throw;
    r.status = records::SessionStatus::kAborted;
    r.abort_reason = e.what();
    for (std::size_t i = r.answers.size(); i < q.questions.size(); ++i) {
      r.answers.push_back(records::NoResponse(q.questions[i].id, q.questions[i].position, 0));
    }
    finish();
    throw SessionAborted(e.code(), e.detail(), r);
  }
  finish();
  return result;
}

}  // namespace voicecare::session
