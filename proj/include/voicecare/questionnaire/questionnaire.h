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


// Question sets: extraction from plain text, manifests, prompt audio.

#ifndef VOICECARE_QUESTIONNAIRE_QUESTIONNAIRE_H_
#define VOICECARE_QUESTIONNAIRE_QUESTIONNAIRE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "voicecare/error.h"
#include "voicecare/providers/provider.h"

namespace voicecare::questionnaire {

inline constexpr int kManifestSchemaVersion = 1;

struct Question {
  std::string id;
  std::string text;  // ends with '?'
  int position = 0;

  friend bool operator==(const Question&, const Question&) = default;
};

struct Questionnaire {
  std::string id;
  std::string title;
  providers::LanguageTag specialist_language{"en"};
  std::string welcome_text;
  std::vector<Question> questions;

  friend bool operator==(const Questionnaire&, const Questionnaire&) = default;
};

// Splits `document` into sentences at '.', '!', '?' and blank lines and
// keeps the ones ending in '?'. Each question is trimmed and its internal
// whitespace runs collapse to one space. CRLF and LF input behave the same.
// Ids are "q1", "q2", ... and positions 0, 1, ... in document order.
std::vector<Question> ExtractQuestions(std::string_view document);

// Ids double as file names: 1-64 of [A-Za-z0-9_-].
bool IsValidId(std::string_view id);

struct Diagnostic {
  std::string field;  // e.g. "questions[1].text"
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

class InvalidManifest : public Error {
 public:
  explicit InvalidManifest(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Every invariant violation; empty when `q` is valid.
std::vector<Diagnostic> Check(const Questionnaire& q);
// Throws InvalidManifest listing Check(q).
void Validate(const Questionnaire& q);

nlohmann::json ToJson(const Questionnaire& q);
// Parses and validates. Throws InvalidManifest.
Questionnaire FromJson(const nlohmann::json& j);

// Written via a temporary file and rename.
void SaveQuestionnaire(const Questionnaire& q, const std::filesystem::path& path);
// Throws Error(kNotFound) for a missing file, InvalidManifest otherwise.
Questionnaire LoadQuestionnaire(const std::filesystem::path& path);

// Builds a questionnaire from a plain-text document. Throws InvalidManifest
// when no question is found.
Questionnaire FromDocument(std::string_view document, std::string id, std::string title,
                           providers::LanguageTag specialist_language, std::string welcome_text);

struct PromptCache {
  providers::LanguageTag language{"en"};
  std::string questionnaire_id;
  std::filesystem::path welcome;
  std::map<std::string, std::filesystem::path> questions;  // question id -> WAV
};

// Synthesizes the welcome text and every question in `language` into
// `dir` (translated first when it differs from the specialist language).
// The directory is assembled under a temporary name and renamed into place,
// so a failure leaves any previous cache untouched and no partial one.
PromptCache PrerenderPrompts(const Questionnaire& q, providers::TextToSpeech& tts,
                             providers::Translator& translator,
                             const providers::LanguageTag& language,
                             const std::filesystem::path& dir, double rate = 1.0);

// Reads back a cache written by PrerenderPrompts. Throws Error(kNotFound).
PromptCache LoadPromptCache(const std::filesystem::path& dir);

}  // namespace voicecare::questionnaire

#endif  // VOICECARE_QUESTIONNAIRE_QUESTIONNAIRE_H_
