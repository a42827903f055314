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


#include "voicecare/store/store.h"

#include <algorithm>
#include <random>

#include "voicecare/audio/wav.h"
#include "voicecare/error.h"
#include "voicecare/fs.h"

namespace voicecare::store {
namespace {

namespace fs = std::filesystem;

void RequireId(const std::string& id) {
  if (!questionnaire::IsValidId(id)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid id '" + id + "'");
  }
}

bool IsPlainFileName(const std::string& name) {
  if (name.empty() || name.size() > 128 || name == "." || name == "..") return false;
  if (name == kManifestName) return false;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return name.front() != '.';
}

records::SessionRecord ReadManifest(const fs::path& path) {
  auto j = nlohmann::json::parse(ReadFileBytes(path), nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::kMalformedFile, path.string() + ": not JSON");
  return records::SessionFromJson(j);
}

std::string Serialize(const records::SessionRecord& r) { return records::ToJson(r).dump(2) + "\n"; }

}  // namespace

std::string AnswerAudioName(int position) { return "answer-" + std::to_string(position + 1) + ".wav"; }

// SessionWriter

SessionWriter::SessionWriter(Store* store, std::string id, std::unique_lock<std::mutex> lock)
    : store_(store), id_(std::move(id)), lock_(std::move(lock)) {}

SessionWriter::SessionWriter(SessionWriter&&) noexcept = default;
SessionWriter& SessionWriter::operator=(SessionWriter&&) noexcept = default;
SessionWriter::~SessionWriter() = default;

std::string SessionWriter::AddAudio(const std::string& name, const audio::AudioClip& clip) {
  if (committed_) throw Error(ErrorCode::kInvalidArgument, "session already committed");
  if (!IsPlainFileName(name)) throw Error(ErrorCode::kInvalidArgument, "bad file name " + name);
  const auto bytes = audio::WriteWav(clip);
  store_->Step("audio:" + name);
  WriteFileDurable(store_->SessionDir(id_) / name,
                   std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  written_.insert(name);
  return name;
}

void SessionWriter::Commit(const records::SessionRecord& record) {
  if (committed_) throw Error(ErrorCode::kInvalidArgument, "session already committed");
  if (record.id != id_) {
    throw Error(ErrorCode::kInvalidArgument, "record id does not match the session being written");
  }
  auto problems = records::Check(record);
  if (!problems.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "inconsistent record: " + problems.front());
  }
  auto require = [&](const std::optional<std::string>& ref) {
    if (ref && !written_.count(*ref)) {
      throw Error(ErrorCode::kInvalidArgument, "record references unsaved audio " + *ref);
    }
  };
  require(record.welcome_audio_ref);
  for (const auto& a : record.answers) require(a.audio_ref);

  const fs::path dir = store_->SessionDir(id_);
  const fs::path tmp = dir / (std::string(kManifestName) + ".tmp");
  store_->Step("manifest:write");
  WriteFileDurable(tmp, Serialize(record));
  SyncDirectory(dir);
  store_->Step("manifest:rename");
  std::error_code ec;
  fs::rename(tmp, dir / kManifestName, ec);
  if (ec) throw Error(ErrorCode::kStorageFailure, "publishing " + id_ + ": " + ec.message());
  SyncDirectory(dir);
  committed_ = true;
  lock_ = {};
  store_->Step("published");
}

// Store

Store::Store(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_ / "questionnaires", ec);
  fs::create_directories(root_ / "sessions", ec);
  if (!fs::is_directory(root_ / "sessions") || !fs::is_directory(root_ / "questionnaires")) {
    throw Error(ErrorCode::kStorageFailure, "cannot create store under " + root_.string());
  }
  // Probe writability.
  const fs::path probe = root_ / ".probe";
  try {
    WriteFileDurable(probe, "");
  } catch (const Error&) {
    throw Error(ErrorCode::kStorageFailure, root_.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

void Store::Step(std::string_view step) const {
  if (hook_) hook_(step);
}

fs::path Store::SessionDir(const std::string& id) const { return root_ / "sessions" / id; }

std::unique_lock<std::mutex> Store::LockSession(const std::string& id) {
  std::shared_ptr<std::mutex> mu;
  {
    std::lock_guard guard(locks_mu_);
    auto& slot = locks_[id];
    if (!slot) slot = std::make_shared<std::mutex>();
    mu = slot;
  }
  return std::unique_lock<std::mutex>(*mu);
}

void Store::SaveQuestionnaire(const questionnaire::Questionnaire& q) {
  questionnaire::Validate(q);
  std::lock_guard guard(questionnaire_mu_);
  const fs::path path = root_ / "questionnaires" / (q.id + ".manifest");
  if (fs::exists(path)) {
    throw Error(ErrorCode::kAlreadyExists, "questionnaire '" + q.id + "' already exists");
  }
  questionnaire::SaveQuestionnaire(q, path);
}

questionnaire::Questionnaire Store::LoadQuestionnaire(const std::string& id) const {
  if (!questionnaire::IsValidId(id)) throw Error(ErrorCode::kNotFound, "questionnaire " + id);
  const fs::path path = root_ / "questionnaires" / (id + ".manifest");
  if (!fs::exists(path)) throw Error(ErrorCode::kNotFound, "questionnaire '" + id + "'");
  return questionnaire::LoadQuestionnaire(path);
}

bool Store::HasQuestionnaire(const std::string& id) const {
  return questionnaire::IsValidId(id) &&
         fs::exists(root_ / "questionnaires" / (id + ".manifest"));
}

std::vector<questionnaire::Questionnaire> Store::ListQuestionnaires() const {
  std::vector<questionnaire::Questionnaire> out;
  for (const auto& entry : fs::directory_iterator(root_ / "questionnaires")) {
    if (entry.path().extension() != ".manifest") continue;
    try {
      out.push_back(questionnaire::LoadQuestionnaire(entry.path()));
    } catch (const Error&) {
      // Not a questionnaire written by this store; ignore.
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

std::string Store::NewSessionId() const {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  const std::string stamp = records::FormatTimestamp(records::Now());
  // 2026-10-19T08:30:00.123456Z -> 20261019T083000
  std::string compact;
  for (char c : stamp.substr(0, 19)) {
    if (c != '-' && c != ':') compact += c;
  }
  while (true) {
    char suffix[9];
    std::snprintf(suffix, sizeof suffix, "%08llx",
                  static_cast<unsigned long long>(rng() & 0xffffffffULL));
    std::string id = "s" + compact + "-" + suffix;
    if (!fs::exists(SessionDir(id))) return id;
  }
}

SessionWriter Store::BeginSession(const std::string& id) {
  RequireId(id);
  auto lock = LockSession(id);
  const fs::path dir = SessionDir(id);
  if (fs::exists(dir / kManifestName)) {
    throw Error(ErrorCode::kAlreadyExists, "session '" + id + "' already exists");
  }
  std::error_code ec;
  if (fs::exists(dir)) fs::remove_all(dir, ec);  // leftovers of an interrupted save
  Step("mkdir");
  if (!fs::create_directories(dir, ec) || ec) {
    throw Error(ErrorCode::kStorageFailure, "cannot create " + dir.string());
  }
  return SessionWriter(this, id, std::move(lock));
}

std::string Store::SaveSession(const records::SessionRecord& record,
                               const std::map<std::string, audio::AudioClip>& clips) {
  SessionWriter writer = BeginSession(record.id);
  for (const auto& [name, clip] : clips) writer.AddAudio(name, clip);
  writer.Commit(record);
  return record.id;
}

records::SessionRecord Store::LoadSession(const std::string& id) const {
  if (!HasSession(id)) throw Error(ErrorCode::kNotFound, "session '" + id + "'");
  return ReadManifest(SessionDir(id) / kManifestName);
}

bool Store::HasSession(const std::string& id) const {
  return questionnaire::IsValidId(id) && fs::exists(SessionDir(id) / kManifestName);
}

std::vector<SessionSummary> Store::ListSessions(const SessionFilter& filter) const {
  std::vector<SessionSummary> out;
  for (const auto& entry : fs::directory_iterator(root_ / "sessions")) {
    const fs::path manifest = entry.path() / kManifestName;
    records::SessionRecord r;
    try {
      r = ReadManifest(manifest);
    } catch (const Error&) {
      continue;  // no manifest yet, or not ours
    }
    if (filter.questionnaire_id && r.questionnaire_id != *filter.questionnaire_id) continue;
    if (filter.from && r.started_at < *filter.from) continue;
    if (filter.to && r.started_at > *filter.to) continue;
    out.push_back({r.id, r.questionnaire_id, r.device_id, r.started_at, r.detected_language,
                   r.final_label, r.status});
  }
  std::sort(out.begin(), out.end(), [](const SessionSummary& a, const SessionSummary& b) {
    if (a.started_at != b.started_at) return a.started_at > b.started_at;
    return a.id > b.id;
  });
  return out;
}

records::SessionRecord Store::AttachAdvice(const std::string& id, const std::string& advice) {
  if (!questionnaire::IsValidId(id)) throw Error(ErrorCode::kNotFound, "session '" + id + "'");
  auto lock = LockSession(id);
  records::SessionRecord r = LoadSession(id);
  if (r.advice == advice) return r;
  r.advice = advice;
  WriteFileAtomic(SessionDir(id) / kManifestName, Serialize(r));
  return r;
}

std::vector<std::pair<int, std::optional<providers::EmotionScores>>> Store::EmotionSeries(
    const std::string& id) const {
  return records::EmotionSeries(LoadSession(id));
}

fs::path Store::AudioPath(const std::string& id, const std::string& file) const {
  if (!HasSession(id)) throw Error(ErrorCode::kNotFound, "session '" + id + "'");
  if (!IsPlainFileName(file) || fs::path(file).extension() != ".wav") {
    throw Error(ErrorCode::kNotFound, "audio '" + file + "'");
  }
  const fs::path path = SessionDir(id) / file;
  if (!fs::is_regular_file(path)) throw Error(ErrorCode::kNotFound, "audio '" + file + "'");
  return path;
}

}  // namespace voicecare::store
