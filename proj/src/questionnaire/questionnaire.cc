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


#include "voicecare/questionnaire/questionnaire.h"

#include <random>

#include "voicecare/audio/wav.h"
#include "voicecare/fs.h"

namespace voicecare::questionnaire {
namespace {

std::string Summarize(const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (!out.empty()) out += "; ";
    out += d.field + ": " + d.message;
  }
  return out;
}

bool IsBlank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos;
}

}  // namespace

InvalidManifest::InvalidManifest(std::vector<Diagnostic> diagnostics)
    : Error(ErrorCode::kInvalidManifest, Summarize(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

bool IsValidId(std::string_view id) {
  if (id.empty() || id.size() > 64) return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

std::vector<Diagnostic> Check(const Questionnaire& q) {
  std::vector<Diagnostic> d;
  if (!IsValidId(q.id)) d.push_back({"id", "must be 1-64 characters of [A-Za-z0-9_-]"});
  if (IsBlank(q.welcome_text)) d.push_back({"welcome_text", "must not be empty"});
  if (q.questions.empty()) d.push_back({"questions", "at least one question is required"});
  std::map<std::string, int> seen;
  for (std::size_t i = 0; i < q.questions.size(); ++i) {
    const Question& question = q.questions[i];
    const std::string where = "questions[" + std::to_string(i) + "]";
    const std::string label = question.id.empty() ? where : "question '" + question.id + "'";
    if (!IsValidId(question.id)) {
      d.push_back({where + ".id", "invalid question id '" + question.id + "'"});
    } else if (!seen.emplace(question.id, static_cast<int>(i)).second) {
      d.push_back({where + ".id", "duplicate question id '" + question.id + "'"});
    }
    if (IsBlank(question.text)) {
      d.push_back({where + ".text", label + ": text is empty"});
    } else if (question.text.back() != '?') {
      d.push_back({where + ".text", label + ": text must end with '?'"});
    }
    if (question.position != static_cast<int>(i)) {
      d.push_back({where + ".position", label + ": position " +
                                            std::to_string(question.position) + ", expected " +
                                            std::to_string(i)});
    }
  }
  return d;
}

void Validate(const Questionnaire& q) {
  auto d = Check(q);
  if (!d.empty()) throw InvalidManifest(std::move(d));
}

nlohmann::json ToJson(const Questionnaire& q) {
  nlohmann::json questions = nlohmann::json::array();
  for (const auto& question : q.questions) {
    questions.push_back(
        {{"id", question.id}, {"text", question.text}, {"position", question.position}});
  }
  return {{"schema_version", kManifestSchemaVersion},
          {"id", q.id},
          {"title", q.title},
          {"specialist_language", q.specialist_language.code()},
          {"welcome_text", q.welcome_text},
          {"questions", std::move(questions)}};
}

Questionnaire FromJson(const nlohmann::json& j) {
  std::vector<Diagnostic> d;
  if (!j.is_object()) throw InvalidManifest(std::vector<Diagnostic>{{"", "manifest must be a JSON object"}});

  auto string_field = [&](const nlohmann::json& obj, const std::string& key,
                          const std::string& path, bool required = true) -> std::string {
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) d.push_back({path, "missing"});
      return {};
    }
    if (!it->is_string()) {
      d.push_back({path, "must be a string"});
      return {};
    }
    return it->get<std::string>();
  };

  if (j.contains("schema_version") &&
      !(j["schema_version"].is_number_integer() &&
        j["schema_version"].get<int>() == kManifestSchemaVersion)) {
    d.push_back({"schema_version", "unsupported schema version"});
  }
  Questionnaire q;
  q.id = string_field(j, "id", "id");
  q.title = string_field(j, "title", "title", false);
  q.welcome_text = string_field(j, "welcome_text", "welcome_text");
  const std::string lang = string_field(j, "specialist_language", "specialist_language");
  if (providers::IsValidLanguageCode(lang)) {
    q.specialist_language = providers::LanguageTag(lang);
  } else if (j.contains("specialist_language") && j["specialist_language"].is_string()) {
    d.push_back({"specialist_language", "invalid language tag '" + lang + "'"});
  }

  auto qs = j.find("questions");
  if (qs == j.end()) {
    d.push_back({"questions", "missing"});
  } else if (!qs->is_array()) {
    d.push_back({"questions", "must be an array"});
  } else {
    for (std::size_t i = 0; i < qs->size(); ++i) {
      const auto& item = (*qs)[i];
      const std::string where = "questions[" + std::to_string(i) + "]";
      if (!item.is_object()) {
        d.push_back({where, "must be an object"});
        continue;
      }
      Question question;
      question.id = string_field(item, "id", where + ".id");
      question.text = string_field(item, "text", where + ".text");
      auto pos = item.find("position");
      if (pos == item.end()) {
        question.position = static_cast<int>(i);
      } else if (!pos->is_number_integer()) {
        d.push_back({where + ".position", "must be an integer"});
      } else {
        question.position = pos->get<int>();
      }
      q.questions.push_back(std::move(question));
    }
  }
  if (!d.empty()) throw InvalidManifest(std::move(d));
  Validate(q);
  return q;
}

void SaveQuestionnaire(const Questionnaire& q, const std::filesystem::path& path) {
  Validate(q);
  WriteFileAtomic(path, ToJson(q).dump(2) + "\n");
}

Questionnaire LoadQuestionnaire(const std::filesystem::path& path) {
  const std::string text = ReadFileBytes(path);
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InvalidManifest(std::vector<Diagnostic>{{"", path.string() + ": not valid JSON"}});
  return FromJson(j);
}

Questionnaire FromDocument(std::string_view document, std::string id, std::string title,
                           providers::LanguageTag specialist_language, std::string welcome_text) {
  Questionnaire q{std::move(id), std::move(title), std::move(specialist_language),
                  std::move(welcome_text), ExtractQuestions(document)};
  if (q.questions.empty()) {
    throw InvalidManifest(std::vector<Diagnostic>{{"document", "no question ending in '?' was found"}});
  }
  Validate(q);
  return q;
}

PromptCache PrerenderPrompts(const Questionnaire& q, providers::TextToSpeech& tts,
                             providers::Translator& translator,
                             const providers::LanguageTag& language,
                             const std::filesystem::path& dir, double rate) {
  Validate(q);
  namespace fs = std::filesystem;
  const fs::path parent = dir.has_parent_path() ? dir.parent_path() : fs::path(".");
  fs::create_directories(parent);
  std::random_device rd;
  const fs::path staging =
      parent / ("." + dir.filename().string() + ".staging-" + std::to_string(rd()));
  fs::create_directories(staging);

  auto render = [&](const std::string& text, const std::string& name) {
    std::string localized = language == q.specialist_language
                                ? text
                                : translator.Translate(text, q.specialist_language, language);
    auto bytes = audio::WriteWav(tts.Synthesize(localized, language, rate));
    WriteFileDurable(staging / name,
                     std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
    return name;
  };

  try {
    nlohmann::json index = {{"questionnaire_id", q.id},
                            {"language", language.code()},
                            {"welcome", render(q.welcome_text, "welcome.wav")}};
    for (const auto& question : q.questions) {
      index["questions"][question.id] = render(question.text, question.id + ".wav");
    }
    WriteFileDurable(staging / "cache.json", index.dump(2) + "\n");
    SyncDirectory(staging);

    // Swap the finished directory in. The previous cache, if any, stays
    // complete until the rename.
    std::error_code ec;
    fs::path old;
    if (fs::exists(dir)) {
      old = parent / ("." + dir.filename().string() + ".old-" + std::to_string(rd()));
      fs::rename(dir, old);
    }
    fs::rename(staging, dir);
    SyncDirectory(parent);
    if (!old.empty()) fs::remove_all(old, ec);
  } catch (...) {
    std::error_code ec;
    fs::remove_all(staging, ec);
    throw;
  }
  return LoadPromptCache(dir);
}

PromptCache LoadPromptCache(const std::filesystem::path& dir) {
  auto j = nlohmann::json::parse(ReadFileBytes(dir / "cache.json"), nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::kMalformedFile, "bad prompt cache index");
  try {
    PromptCache cache;
    cache.language = providers::LanguageTag(j.at("language").get<std::string>());
    cache.questionnaire_id = j.at("questionnaire_id").get<std::string>();
    cache.welcome = dir / j.at("welcome").get<std::string>();
    for (const auto& [id, file] : j.at("questions").items()) {
      cache.questions[id] = dir / file.get<std::string>();
    }
    return cache;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedFile, std::string("bad prompt cache index: ") + e.what());
  }
}

}  // namespace voicecare::questionnaire
