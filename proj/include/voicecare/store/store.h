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


// Directory store for questionnaires and session records.
//
//   <root>/questionnaires/<id>.manifest
//   <root>/sessions/<id>/answer-<n>.wav, welcome.wav, manifest
//
// A session exists once its manifest exists. Audio is written first and the
// manifest last, through a temporary file and a rename, so an interrupted
// save leaves nothing visible. See docs/store.md.

#ifndef VOICECARE_STORE_STORE_H_
#define VOICECARE_STORE_STORE_H_

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "voicecare/audio/clip.h"
#include "voicecare/questionnaire/questionnaire.h"
#include "voicecare/records/records.h"

namespace voicecare::store {

inline constexpr char kManifestName[] = "manifest";
inline constexpr char kWelcomeAudio[] = "welcome.wav";

// "answer-<position + 1>.wav"
std::string AnswerAudioName(int position);

struct SessionSummary {
  std::string id;
  std::string questionnaire_id;
  std::string device_id;
  records::Timestamp started_at{};
  providers::LanguageTag detected_language{"en"};
  std::optional<records::EmotionLabel> final_label;
  records::SessionStatus status = records::SessionStatus::kCompleted;
};

struct SessionFilter {
  std::optional<std::string> questionnaire_id = std::nullopt;
  std::optional<records::Timestamp> from = std::nullopt;  // inclusive
  std::optional<records::Timestamp> to = std::nullopt;    // inclusive
};

// Called with a step name before every write in a session save
// ("mkdir", "audio:<file>", "manifest:write", "manifest:rename") and once
// after publication ("published"). A hook that throws simulates a crash at
// that point.
using FaultHook = std::function<void(std::string_view step)>;

class Store;

// Writes one session incrementally: audio as it becomes available, the
// manifest on Commit. Holds the session's write lock until destroyed.
class SessionWriter {
 public:
  SessionWriter(SessionWriter&&) noexcept;
  SessionWriter& operator=(SessionWriter&&) noexcept;
  ~SessionWriter();

  const std::string& id() const { return id_; }

  // Stores `clip` as `name` (a plain file name) and returns the reference to
  // put in the record.
  std::string AddAudio(const std::string& name, const audio::AudioClip& clip);

  // Validates the record, checks that every referenced file was written and
  // publishes the manifest. The writer is spent afterwards.
  void Commit(const records::SessionRecord& record);

 private:
  friend class Store;
  SessionWriter(Store* store, std::string id, std::unique_lock<std::mutex> lock);

  Store* store_;
  std::string id_;
  std::unique_lock<std::mutex> lock_;
  std::set<std::string> written_;
  bool committed_ = false;
};

class Store {
 public:
  // Creates the layout under `root` if needed. Throws
  // Error(kStorageFailure) when the root is not a writable directory.
  explicit Store(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  void SetFaultHook(FaultHook hook) { hook_ = std::move(hook); }

  // Throws Error(kAlreadyExists) when the id is taken.
  void SaveQuestionnaire(const questionnaire::Questionnaire& q);
  // Throws Error(kNotFound).
  questionnaire::Questionnaire LoadQuestionnaire(const std::string& id) const;
  bool HasQuestionnaire(const std::string& id) const;
  // Sorted by id.
  std::vector<questionnaire::Questionnaire> ListQuestionnaires() const;

  // A fresh, unused session id.
  std::string NewSessionId() const;

  // Throws Error(kAlreadyExists) when a session with this id is visible.
  // Leftovers of an interrupted save under the same id are replaced.
  SessionWriter BeginSession(const std::string& id);

  // One-shot save: `clips` maps file names to audio. Returns the id.
  std::string SaveSession(const records::SessionRecord& record,
                          const std::map<std::string, audio::AudioClip>& clips);

  // Throws Error(kNotFound).
  records::SessionRecord LoadSession(const std::string& id) const;
  bool HasSession(const std::string& id) const;
  // Newest first; ties by id descending.
  std::vector<SessionSummary> ListSessions(const SessionFilter& filter = {}) const;

  // Sets the advice text; nothing else changes. Throws Error(kNotFound).
  records::SessionRecord AttachAdvice(const std::string& id, const std::string& advice);

  // Throws Error(kNotFound).
  std::vector<std::pair<int, std::optional<providers::EmotionScores>>> EmotionSeries(
      const std::string& id) const;

  // Path of a stored audio file of a visible session. Throws
  // Error(kNotFound) for unknown sessions, unknown files or names that are
  // not plain file names.
  std::filesystem::path AudioPath(const std::string& id, const std::string& file) const;

 private:
  friend class SessionWriter;

  std::filesystem::path SessionDir(const std::string& id) const;
  std::unique_lock<std::mutex> LockSession(const std::string& id);
  void Step(std::string_view step) const;

  std::filesystem::path root_;
  FaultHook hook_;
  std::mutex locks_mu_;
  std::map<std::string, std::shared_ptr<std::mutex>> locks_;
  std::mutex questionnaire_mu_;
};

}  // namespace voicecare::store

#endif  // VOICECARE_STORE_STORE_H_
