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

#include "voicecare/gateway/gateway.h"

#include <charconv>
#include <cstdlib>
#include <random>
#include <sstream>

#include "voicecare/audio/wav.h"
#include "voicecare/providers/server.h"
#include "voicecare/providers/wire.h"

namespace voicecare::gateway {
namespace {

using nlohmann::json;

constexpr char kDefaultWelcome[] = "Hello, I am your assistant. Please say something.";
constexpr char kDefaultDevice[] = "upload";

json ErrorBody(ErrorCode code, const std::string& message) {
  return {{"error", ErrorCodeName(code)}, {"message", message}};
}

Reply Fail(ErrorCode code, const std::string& message) {
  return {providers::HttpStatusFor(code), ErrorBody(code, message), std::nullopt};
}

// Runs a handler body, turning exceptions into error replies.
template <typename F>
Reply Guard(F&& body) {
  try {
    return body();
  } catch (const questionnaire::InvalidManifest& e) {
    Reply r = Fail(e.code(), e.detail());
    json diagnostics = json::array();
    for (const auto& d : e.diagnostics()) {
      diagnostics.push_back({{"field", d.field}, {"message", d.message}});
    }
    r.body["diagnostics"] = std::move(diagnostics);
    return r;
  } catch (const Error& e) {
    return Fail(e.code(), e.detail());
  } catch (const std::exception& e) {
    return {500, {{"error", "Internal"}, {"message", e.what()}}, std::nullopt};
  }
}

json ParseJsonBody(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("body is not JSON: ") + e.what());
  }
}

std::string OptionalString(const json& j, const char* key, std::string fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  if (!it->is_string()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(key) + " must be a string");
  }
  return it->get<std::string>();
}

std::string QueryValue(const Query& query, const std::string& key, std::string fallback) {
  auto it = query.find(key);
  return it == query.end() ? fallback : it->second;
}

json SummaryJson(const store::SessionSummary& s) {
  return {{"id", s.id},
          {"questionnaire_id", s.questionnaire_id},
          {"device_id", s.device_id},
          {"started_at", records::FormatTimestamp(s.started_at)},
          {"detected_language", s.detected_language.code()},
          {"final_label", s.final_label ? json(records::LabelName(*s.final_label)) : json(nullptr)},
          {"status", s.status == records::SessionStatus::kCompleted ? "completed" : "aborted"}};
}

std::string AudioUrl(const std::string& session, const std::string& file) {
  return "/sessions/" + session + "/audio/" + file;
}

// "answer-3" or "answer-3.wav" -> 2; nullopt for other names.
std::optional<int> AnswerPosition(std::string name) {
  if (name.size() > 4 && name.ends_with(".wav")) name.resize(name.size() - 4);
  if (!name.starts_with("answer-")) return std::nullopt;
  const std::string digits = name.substr(7);
  int n = 0;
  auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (digits.empty() || ec != std::errc() || end != digits.data() + digits.size() || n < 1) {
    return std::nullopt;
  }
  return n - 1;
}

audio::AudioClip ParseUpload(const Upload& part) {
  try {
    return audio::ParseWav(std::span(reinterpret_cast<const std::uint8_t*>(part.content.data()),
                                     part.content.size()));
  } catch (const Error& e) {
    throw Error(e.code(), "upload '" + part.field + "': " + e.detail());
  }
}

template <typename T>
T ParseNumber(const char* name, const char* text) {
  T value{};
  std::string s(text);
  std::istringstream in(s);
  in >> value;
  if (!in || !in.eof() || s.empty()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(name) + ": cannot parse '" + s + "'");
  }
  return value;
}

std::vector<providers::LanguageTag> ParseLanguages(const char* name, const std::string& list) {
  std::vector<providers::LanguageTag> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.emplace_back(item);
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvalidArgument, std::string(name) + ": " + e.detail());
    }
  }
  return out;
}

}  // namespace

void ApplyEnvironment(GatewayConfig& config, const EnvLookup& getenv) {
  auto get = [&](const char* name) -> const char* {
    const char* v = getenv(name);
    return v && *v ? v : nullptr;
  };
  auto& p = config.providers;
  auto& policy = config.policy;
  if (auto v = get("VOICECARE_HOST")) config.host = v;
  if (auto v = get("VOICECARE_PORT")) config.port = ParseNumber<int>("VOICECARE_PORT", v);
  if (auto v = get("VOICECARE_DATA_ROOT")) config.data_root = v;
  if (auto v = get("VOICECARE_PROVIDER_MODE")) {
    const std::string mode = v;
    if (mode == "mock") {
      p.mode = providers::ProviderConfig::Mode::kMock;
    } else if (mode == "remote") {
      p.mode = providers::ProviderConfig::Mode::kRemote;
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "VOICECARE_PROVIDER_MODE must be mock or remote, not '" + mode + "'");
    }
  }
  if (auto v = get("VOICECARE_PROVIDER_URL")) p.remote_base_url = v;
  if (auto v = get("VOICECARE_PROVIDER_TIMEOUT")) {
    p.remote_timeout_seconds = ParseNumber<double>("VOICECARE_PROVIDER_TIMEOUT", v);
  }
  if (auto v = get("VOICECARE_LEXICON_DIR")) p.translation_lexicon_dir = v;
  if (auto v = get("VOICECARE_EMOTION_FIXTURES")) p.emotion_fixtures = v;
  if (auto v = get("VOICECARE_EMOTION_LEXICON")) p.emotion_lexicon = v;
  if (auto v = get("VOICECARE_LANGUAGES")) {
    p.supported_languages = ParseLanguages("VOICECARE_LANGUAGES", v);
  }
  if (auto v = get("VOICECARE_SILENCE_THRESHOLD")) {
    p.silence_threshold = ParseNumber<double>("VOICECARE_SILENCE_THRESHOLD", v);
    policy.record.silence_rms_threshold = p.silence_threshold;
  }
  if (auto v = get("VOICECARE_MAX_REPEATS")) {
    policy.max_repeats = ParseNumber<int>("VOICECARE_MAX_REPEATS", v);
  }
  if (auto v = get("VOICECARE_CHUNK_SECONDS")) {
    policy.record.chunk_seconds = ParseNumber<double>("VOICECARE_CHUNK_SECONDS", v);
  }
  if (auto v = get("VOICECARE_MAX_CHUNKS")) {
    policy.record.max_chunks = ParseNumber<int>("VOICECARE_MAX_CHUNKS", v);
  }
  if (auto v = get("VOICECARE_EMOTION_LANGUAGE")) {
    try {
      policy.emotion_language = providers::LanguageTag(v);
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvalidArgument, "VOICECARE_EMOTION_LANGUAGE: " + e.detail());
    }
  }
  if (auto v = get("VOICECARE_SPEECH_RATE")) {
    policy.speech_rate = ParseNumber<double>("VOICECARE_SPEECH_RATE", v);
  }
}

void ApplyEnvironment(GatewayConfig& config) {
  ApplyEnvironment(config, [](const char* name) { return std::getenv(name); });
}

void Validate(const GatewayConfig& config) {
  if (config.port < 0 || config.port > 65535) {
    throw Error(ErrorCode::kInvalidArgument, "port out of range");
  }
  if (config.host.empty()) throw Error(ErrorCode::kInvalidArgument, "empty listen host");
  providers::Validate(config.providers);
  session::Validate(config.policy);
}

Gateway::Gateway(GatewayConfig config)
    : Gateway(config, (Validate(config), providers::MakeProviders(config.providers))) {}

Gateway::Gateway(GatewayConfig config, providers::Providers providers)
    : config_(std::move(config)),
      providers_(std::move(providers)),
      store_(std::make_unique<store::Store>(config_.data_root)) {
  session::Validate(config_.policy);
}

std::mutex& Gateway::DeviceLock(const std::string& device_id) {
  std::lock_guard lock(devices_mu_);
  auto& slot = devices_[device_id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

std::string Gateway::NewQuestionnaireId() const {
  std::random_device rd;
  while (true) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "doc-%08x", static_cast<unsigned>(rd()));
    if (!store_->HasQuestionnaire(buf)) return buf;
  }
}

Reply Gateway::Create(const questionnaire::Questionnaire& q) {
  store_->SaveQuestionnaire(q);
  return {201, {{"id", q.id}, {"questionnaire", questionnaire::ToJson(q)}}, std::nullopt};
}

Reply Gateway::CreateQuestionnaire(const std::string& body, const std::string& content_type,
                                   const Query& query) {
  return Guard([&] {
    if (content_type.starts_with("text/plain")) {
      std::string id = QueryValue(query, "id", "");
      if (id.empty()) id = NewQuestionnaireId();
      return Create(questionnaire::FromDocument(
          body, id, QueryValue(query, "title", id),
          providers::LanguageTag(QueryValue(query, "specialist_language", "en")),
          QueryValue(query, "welcome_text", kDefaultWelcome)));
    }
    return Create(questionnaire::FromJson(ParseJsonBody(body)));
  });
}

Reply Gateway::ImportDocument(const std::string& body) {
  return Guard([&] {
    const json req = ParseJsonBody(body);
    if (!req.is_object() || !req.contains("document") || !req["document"].is_string()) {
      throw Error(ErrorCode::kInvalidArgument, "document must be a string");
    }
    std::string id = OptionalString(req, "id", "");
    if (id.empty()) id = NewQuestionnaireId();
    auto q = questionnaire::FromDocument(
        req["document"].get<std::string>(), id, OptionalString(req, "title", id),
        providers::LanguageTag(OptionalString(req, "specialist_language", "en")),
        OptionalString(req, "welcome_text", kDefaultWelcome));
    const bool preview = req.contains("preview") && req["preview"].is_boolean() &&
                         req["preview"].get<bool>();
    if (preview) {
      return Reply{200, {{"preview", true}, {"questionnaire", questionnaire::ToJson(q)}}, {}};
    }
    return Create(q);
  });
}

Reply Gateway::ListQuestionnaires() const {
  return Guard([&] {
    json list = json::array();
    for (const auto& q : store_->ListQuestionnaires()) list.push_back(questionnaire::ToJson(q));
    return Reply{200, {{"questionnaires", std::move(list)}}, {}};
  });
}

Reply Gateway::GetQuestionnaire(const std::string& id) const {
  return Guard(
      [&] { return Reply{200, questionnaire::ToJson(store_->LoadQuestionnaire(id)), {}}; });
}

Reply Gateway::SubmitSession(const std::vector<Upload>& parts) {
  return Guard([&] {
    std::string questionnaire_id;
    std::string device_id = kDefaultDevice;
    std::vector<const Upload*> welcome;
    std::map<int, std::vector<const Upload*>> answers;
    for (const auto& part : parts) {
      if (part.field == "questionnaire_id") {
        questionnaire_id = part.content;
      } else if (part.field == "device_id") {
        device_id = part.content;
      } else if (part.field == "welcome" || part.field == "welcome.wav") {
        welcome.push_back(&part);
      } else if (auto pos = AnswerPosition(part.field)) {
        answers[*pos].push_back(&part);
      } else {
        throw Error(ErrorCode::kInvalidArgument, "unexpected form field '" + part.field + "'");
      }
    }
    if (questionnaire_id.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "questionnaire_id is required");
    }
    if (device_id.empty()) throw Error(ErrorCode::kInvalidArgument, "device_id is empty");
    const auto q = store_->LoadQuestionnaire(questionnaire_id);

    session::ScriptedAudioIo io(config_.policy.record);
    std::vector<audio::AudioClip> replies;
    for (const auto* part : welcome) replies.push_back(ParseUpload(*part));
    io.SetWelcomeReplies(std::move(replies));
    for (const auto& [pos, uploads] : answers) {
      if (pos >= static_cast<int>(q.questions.size())) {
        throw Error(ErrorCode::kInvalidArgument,
                    "answer-" + std::to_string(pos + 1) + " but the questionnaire has " +
                        std::to_string(q.questions.size()) + " questions");
      }
      std::vector<audio::AudioClip> attempts;
      for (const auto* part : uploads) attempts.push_back(ParseUpload(*part));
      io.SetAnswers(pos, std::move(attempts));
    }

    std::lock_guard device_lock(DeviceLock(device_id));
    session::SessionEngine engine(providers_, config_.policy, store_.get());
    try {
      auto result = engine.Run(q, io, device_id);
      return Reply{200, records::ToJson(result.record), {}};
    } catch (const session::SessionAborted& e) {
      Reply r = Fail(e.code(), e.detail());
      r.body["session_id"] = e.record().id;
      r.body["record"] = records::ToJson(e.record());
      return r;
    }
  });
}

Reply Gateway::ListSessions(const Query& query) const {
  return Guard([&] {
    store::SessionFilter filter;
    if (auto it = query.find("questionnaire_id"); it != query.end()) {
      filter.questionnaire_id = it->second;
    }
    if (auto it = query.find("from"); it != query.end()) {
      filter.from = records::ParseTimestamp(it->second);
    }
    if (auto it = query.find("to"); it != query.end()) {
      filter.to = records::ParseTimestamp(it->second);
    }
    json list = json::array();
    for (const auto& s : store_->ListSessions(filter)) list.push_back(SummaryJson(s));
    return Reply{200, {{"sessions", std::move(list)}}, {}};
  });
}

Reply Gateway::GetSession(const std::string& id) const {
  return Guard([&] { return Reply{200, records::ToJson(store_->LoadSession(id)), {}}; });
}

Reply Gateway::GetResults(const std::string& id) const {
  return Guard([&] {
    const auto r = store_->LoadSession(id);
    std::map<std::string, std::string> texts;
    if (store_->HasQuestionnaire(r.questionnaire_id)) {
      for (const auto& question : store_->LoadQuestionnaire(r.questionnaire_id).questions) {
        texts[question.id] = question.text;
      }
    }
    auto text_of = [&](const std::string& qid) {
      auto it = texts.find(qid);
      return it == texts.end() ? json(nullptr) : json(it->second);
    };

    json series = json::array();
    json transcripts = json::array();
    for (const auto& a : r.answers) {
      series.push_back(
          {{"position", a.position},
           {"question_id", a.question_id},
           {"emotion", a.emotion ? json(*a.emotion) : json(nullptr)},
           {"label", a.emotion ? json(records::LabelName(records::FinalEmotion(*a.emotion)))
                               : json(nullptr)}});
      transcripts.push_back(
          {{"position", a.position},
           {"question_id", a.question_id},
           {"question_text", text_of(a.question_id)},
           {"user", a.transcript_user ? json(a.transcript_user->text) : json(nullptr)},
           {"user_language",
            a.transcript_user ? json(a.transcript_user->language.code()) : json(nullptr)},
           {"specialist", a.transcript_specialist ? json(*a.transcript_specialist) : json(nullptr)},
           {"emotion_language",
            a.transcript_emotion_lang ? json(*a.transcript_emotion_lang) : json(nullptr)},
           {"repeats_used", a.repeats_used},
           {"no_response", a.no_response},
           {"audio_url", a.audio_ref ? json(AudioUrl(r.id, *a.audio_ref)) : json(nullptr)}});
    }
    json body = {
        {"session_id", r.id},
        {"questionnaire_id", r.questionnaire_id},
        {"device_id", r.device_id},
        {"started_at", records::FormatTimestamp(r.started_at)},
        {"status", r.status == records::SessionStatus::kCompleted ? "completed" : "aborted"},
        {"detected_language", r.detected_language.code()},
        {"mean_emotion", r.mean_emotion ? json(*r.mean_emotion) : json(nullptr)},
        {"final_label", r.final_label ? json(records::LabelName(*r.final_label)) : json(nullptr)},
        {"emotion_series", std::move(series)},
        {"transcripts", std::move(transcripts)},
        {"advice", r.advice ? json(*r.advice) : json(nullptr)}};
    return Reply{200, std::move(body), {}};
  });
}

Reply Gateway::AttachAdvice(const std::string& id, const std::string& body) {
  return Guard([&] {
    const json req = ParseJsonBody(body);
    if (!req.is_object() || !req.contains("advice") || !req["advice"].is_string()) {
      throw Error(ErrorCode::kInvalidArgument, "advice must be a string");
    }
    return Reply{200, records::ToJson(store_->AttachAdvice(id, req["advice"].get<std::string>())),
                 {}};
  });
}

Reply Gateway::GetAudio(const std::string& id, const std::string& file) const {
  return Guard([&] { return Reply{200, nullptr, store_->AudioPath(id, file)}; });
}

}  // namespace voicecare::gateway
