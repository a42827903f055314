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


#include "voicecare/records/records.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <ctime>

#include "voicecare/error.h"
#include "voicecare/providers/wire.h"

namespace voicecare::records {
namespace {

constexpr std::string_view kLabelNames[] = {"JOY", "ANGER", "SADNESS", "FEAR", "DISGUST"};

template <typename T>
nlohmann::json OrNull(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<std::string> OptString(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

AnswerRecord AnswerFromJson(const nlohmann::json& j) {
  AnswerRecord a;
  a.question_id = j.at("question_id").get<std::string>();
  a.position = j.at("position").get<int>();
  a.audio_ref = OptString(j, "audio_ref");
  if (!j.at("transcript_user").is_null()) {
    a.transcript_user = providers::TranscriptFromJson(j["transcript_user"]);
  }
  a.transcript_specialist = OptString(j, "transcript_specialist");
  a.transcript_emotion_lang = OptString(j, "transcript_emotion_lang");
  if (!j.at("emotion").is_null()) a.emotion = j["emotion"].get<providers::EmotionScores>();
  a.repeats_used = j.at("repeats_used").get<int>();
  a.no_response = j.at("no_response").get<bool>();
  return a;
}

}  // namespace

std::string_view LabelName(EmotionLabel label) { return kLabelNames[static_cast<int>(label)]; }

std::optional<EmotionLabel> LabelFromName(std::string_view name) {
  for (int i = 0; i < 5; ++i) {
    if (kLabelNames[i] == name) return static_cast<EmotionLabel>(i);
  }
  return std::nullopt;
}

EmotionLabel FinalEmotion(const providers::EmotionScores& scores) {
  const auto e = scores.emotions();
  int best = 0;
  for (int i = 1; i < 5; ++i) {
    if (e[i] > e[best]) best = i;
  }
  return static_cast<EmotionLabel>(best);
}

AnswerRecord NoResponse(std::string question_id, int position, int repeats) {
  AnswerRecord a;
  a.question_id = std::move(question_id);
  a.position = position;
  a.repeats_used = repeats;
  a.no_response = true;
  return a;
}

Aggregate AggregateEmotions(std::span<const AnswerRecord> answers) {
  // Shifted mean: x0 + sum(x - x0) / n, exact when all inputs are equal.
  std::vector<std::array<double, 6>> rows;
  for (const auto& a : answers) {
    if (!a.emotion) continue;
    const auto& e = *a.emotion;
    rows.push_back({e.joy, e.anger, e.sadness, e.fear, e.disgust, e.sentiment});
  }
  if (rows.empty()) return {};
  std::array<double, 6> mean{};
  for (int k = 0; k < 6; ++k) {
    double delta = 0.0;
    for (const auto& row : rows) delta += row[k] - rows[0][k];
    mean[k] = rows[0][k] + delta / static_cast<double>(rows.size());
  }
  providers::EmotionScores m{mean[0], mean[1], mean[2], mean[3], mean[4], mean[5]};
  return {m, FinalEmotion(m)};
}

Timestamp Now() {
  return std::chrono::time_point_cast<std::chrono::microseconds>(std::chrono::system_clock::now());
}

std::string FormatTimestamp(Timestamp t) {
  using namespace std::chrono;
  const auto secs = floor<seconds>(t);
  const auto micros = (t - secs).count();
  const std::time_t tt = system_clock::to_time_t(secs);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%06lldZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                static_cast<long long>(micros));
  return buf;
}

Timestamp ParseTimestamp(std::string_view text) {
  using namespace std::chrono;
  int y, mo, d, h, mi, s;
  long long us = 0;
  char tail = 0;
  const std::string str(text);
  const int n = std::sscanf(str.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d.%6lld%c", &y, &mo, &d, &h, &mi,
                            &s, &us, &tail);
  if (n != 8 || tail != 'Z' || str.size() != 27) {
    throw Error(ErrorCode::kInvalidArgument, "bad timestamp '" + str + "'");
  }
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 60) {
    throw Error(ErrorCode::kInvalidArgument, "bad timestamp '" + str + "'");
  }
  return Timestamp(sys_days(ymd).time_since_epoch() + hours(h) + minutes(mi) + seconds(s) +
                   microseconds(us));
}

std::vector<std::string> Check(const SessionRecord& r, int question_count, int max_repeats) {
  std::vector<std::string> problems;
  if (question_count >= 0 && static_cast<int>(r.answers.size()) != question_count) {
    problems.push_back("answers: " + std::to_string(r.answers.size()) + " for " +
                       std::to_string(question_count) + " questions");
  }
  bool any_scored = false;
  for (std::size_t i = 0; i < r.answers.size(); ++i) {
    const auto& a = r.answers[i];
    const std::string where = "answers[" + std::to_string(i) + "]";
    const bool all_null = !a.audio_ref && !a.transcript_user && !a.transcript_specialist &&
                          !a.transcript_emotion_lang && !a.emotion;
    if (a.no_response != all_null) {
      problems.push_back(where + ": no_response disagrees with the payload fields");
    }
    if (a.position != static_cast<int>(i)) problems.push_back(where + ": position out of order");
    if (a.repeats_used < 0 || (max_repeats >= 0 && a.repeats_used > max_repeats)) {
      problems.push_back(where + ": repeats_used out of range");
    }
    if (a.emotion) any_scored = true;
  }
  if (r.mean_emotion.has_value() != any_scored) {
    problems.push_back("mean_emotion must be present exactly when some answer is scored");
  }
  if (r.final_label.has_value() != r.mean_emotion.has_value()) {
    problems.push_back("final_label must accompany mean_emotion");
  }
  return problems;
}

nlohmann::json ToJson(const AnswerRecord& a) {
  return {{"question_id", a.question_id},
          {"position", a.position},
          {"audio_ref", OrNull(a.audio_ref)},
          {"transcript_user", OrNull(a.transcript_user)},
          {"transcript_specialist", OrNull(a.transcript_specialist)},
          {"transcript_emotion_lang", OrNull(a.transcript_emotion_lang)},
          {"emotion", OrNull(a.emotion)},
          {"repeats_used", a.repeats_used},
          {"no_response", a.no_response}};
}

nlohmann::json ToJson(const SessionRecord& r) {
  nlohmann::json answers = nlohmann::json::array();
  for (const auto& a : r.answers) answers.push_back(ToJson(a));
  return {{"schema_version", kSessionSchemaVersion},
          {"id", r.id},
          {"questionnaire_id", r.questionnaire_id},
          {"device_id", r.device_id},
          {"started_at", FormatTimestamp(r.started_at)},
          {"status", r.status == SessionStatus::kCompleted ? "completed" : "aborted"},
          {"abort_reason", OrNull(r.abort_reason)},
          {"detected_language", r.detected_language.code()},
          {"language_fallback", r.language_fallback},
          {"welcome_audio_ref", OrNull(r.welcome_audio_ref)},
          {"answers", std::move(answers)},
          {"mean_emotion", OrNull(r.mean_emotion)},
          {"final_label", r.final_label ? nlohmann::json(LabelName(*r.final_label))
                                        : nlohmann::json(nullptr)},
          {"advice", OrNull(r.advice)}};
}

SessionRecord SessionFromJson(const nlohmann::json& j) {
  try {
    if (j.at("schema_version").get<int>() != kSessionSchemaVersion) {
      throw Error(ErrorCode::kMalformedFile, "unsupported session schema version");
    }
    SessionRecord r;
    r.id = j.at("id").get<std::string>();
    r.questionnaire_id = j.at("questionnaire_id").get<std::string>();
    r.device_id = j.at("device_id").get<std::string>();
    r.started_at = ParseTimestamp(j.at("started_at").get<std::string>());
    const std::string status = j.at("status").get<std::string>();
    if (status != "completed" && status != "aborted") {
      throw Error(ErrorCode::kMalformedFile, "bad status '" + status + "'");
    }
    r.status = status == "completed" ? SessionStatus::kCompleted : SessionStatus::kAborted;
    r.abort_reason = OptString(j, "abort_reason");
    r.detected_language = providers::TagFromJson(j.at("detected_language"));
    r.language_fallback = j.at("language_fallback").get<bool>();
    r.welcome_audio_ref = OptString(j, "welcome_audio_ref");
    for (const auto& a : j.at("answers")) r.answers.push_back(AnswerFromJson(a));
    if (!j.at("mean_emotion").is_null()) {
      r.mean_emotion = j["mean_emotion"].get<providers::EmotionScores>();
    }
    if (auto label = OptString(j, "final_label")) {
      r.final_label = LabelFromName(*label);
      if (!r.final_label) throw Error(ErrorCode::kMalformedFile, "bad label '" + *label + "'");
    }
    r.advice = OptString(j, "advice");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedFile, std::string("session manifest: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kMalformedFile) throw;
    throw Error(ErrorCode::kMalformedFile, "session manifest: " + e.detail());
  }
}

std::vector<std::pair<int, std::optional<providers::EmotionScores>>> EmotionSeries(
    const SessionRecord& record) {
  std::vector<std::pair<int, std::optional<providers::EmotionScores>>> out;
  for (const auto& a : record.answers) out.emplace_back(a.position, a.emotion);
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

}  // namespace voicecare::records
