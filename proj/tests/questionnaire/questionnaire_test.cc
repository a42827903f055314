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

#include <gtest/gtest.h>

#include <random>

#include "../testing/corpus.h"
#include "voicecare/audio/wav.h"
#include "voicecare/fs.h"
#include "voicecare/providers/mock.h"

namespace voicecare::questionnaire {
namespace {

namespace fs = std::filesystem;
using providers::LanguageTag;

std::vector<std::string> Texts(const std::vector<Question>& qs) {
  std::vector<std::string> out;
  for (const auto& q : qs) out.push_back(q.text);
  return out;
}

std::string ToCrlf(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\n') out += '\r';
    out += c;
  }
  return out;
}

Questionnaire Sample() {
  return FromDocument("How are you? Did you sleep well? Do you have pain?", "weekly", "Weekly",
                      LanguageTag("fr"), "Hello, please answer after the tone.");
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("vc-q-" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

TEST(ExtractTest, Examples) {
  EXPECT_EQ(Texts(ExtractQuestions("How are you? I see. Did you sleep well?")),
            (std::vector<std::string>{"How are you?", "Did you sleep well?"}));
  EXPECT_TRUE(ExtractQuestions("").empty());
  EXPECT_EQ(Texts(ExtractQuestions("¿Cómo estás?")), (std::vector<std::string>{"¿Cómo estás?"}));
  EXPECT_EQ(Texts(ExtractQuestions("A? B. C?")), (std::vector<std::string>{"A?", "C?"}));
}

TEST(ExtractTest, IdsAndPositions) {
  auto qs = ExtractQuestions("One? Two. Three? Four?");
  ASSERT_EQ(qs.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(qs[i].position, i);
    EXPECT_EQ(qs[i].id, "q" + std::to_string(i + 1));
  }
}

TEST(ExtractTest, Corpus) {
  auto docs = testing::LoadExtractionCorpus();
  ASSERT_EQ(docs.size(), 20u);
  for (const auto& doc : docs) {
    auto got = ExtractQuestions(doc.text);
    EXPECT_EQ(Texts(got), doc.expected) << doc.name;
    EXPECT_EQ(got, ExtractQuestions(ToCrlf(doc.text))) << doc.name;
    for (const auto& q : got) {
      ASSERT_FALSE(q.text.empty());
      EXPECT_EQ(q.text.back(), '?') << doc.name;
      EXPECT_EQ(q.text.find_first_of(" \t\r\n"), q.text.find(' ')) << doc.name;
      EXPECT_NE(q.text.front(), ' ');
    }
  }
}

// Random documents over a small alphabet heavy in terminators.
std::string RandomDocument(std::mt19937_64& rng) {
  static const std::vector<std::string> kPieces = {"a", "b", "Q", " ", "  ", "\n", "\n\n", "\r\n",
                                                   "\t", ".", "!", "?", "¿", "é", "\n \n"};
  std::uniform_int_distribution<std::size_t> len(0, 60);
  std::uniform_int_distribution<std::size_t> pick(0, kPieces.size() - 1);
  std::string out;
  for (std::size_t i = len(rng); i > 0; --i) out += kPieces[pick(rng)];
  return out;
}

TEST(ExtractTest, PropertiesOnRandomDocuments) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::string doc = RandomDocument(rng);
    auto qs = ExtractQuestions(doc);
    for (const auto& q : qs) {
      ASSERT_GE(q.text.size(), 2u);
      EXPECT_EQ(q.text.back(), '?');
      EXPECT_EQ(q.text, q.text.substr(q.text.find_first_not_of(' ')));
    }
    // LF vs CRLF.
    std::string lf;
    for (std::size_t i = 0; i < doc.size(); ++i) {
      if (doc[i] == '\r' && i + 1 < doc.size() && doc[i + 1] == '\n') continue;
      lf += doc[i];
    }
    EXPECT_EQ(ExtractQuestions(lf), ExtractQuestions(ToCrlf(lf)));

    // Stability: questions interleaved with filler sentences re-extract
    // to the same list.
    std::string mixed = "Filler text.";
    for (const auto& q : qs) mixed += " " + q.text + "\nMore filler!\n\n";
    EXPECT_EQ(ExtractQuestions(mixed), qs);
  }
}

TEST(ManifestTest, RoundTrip) {
  TempDir tmp;
  Questionnaire q = Sample();
  SaveQuestionnaire(q, tmp.path() / "weekly.manifest");
  EXPECT_EQ(LoadQuestionnaire(tmp.path() / "weekly.manifest"), q);
  EXPECT_EQ(FromJson(ToJson(q)), q);
  EXPECT_FALSE(fs::exists(tmp.path() / "weekly.manifest.tmp"));
}

TEST(ManifestTest, ZeroQuestions) {
  auto j = ToJson(Sample());
  j["questions"] = nlohmann::json::array();
  try {
    FromJson(j);
    FAIL();
  } catch (const InvalidManifest& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidManifest);
    ASSERT_EQ(e.diagnostics().size(), 1u);
    EXPECT_EQ(e.diagnostics()[0].field, "questions");
  }
}

TEST(ManifestTest, QuestionWithoutMarkNamesTheId) {
  auto j = ToJson(Sample());
  j["questions"][1]["text"] = "Did you sleep well";
  try {
    FromJson(j);
    FAIL();
  } catch (const InvalidManifest& e) {
    ASSERT_EQ(e.diagnostics().size(), 1u);
    EXPECT_EQ(e.diagnostics()[0].field, "questions[1].text");
    EXPECT_NE(e.diagnostics()[0].message.find("'q2'"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("q2"), std::string::npos);
  }
}

TEST(ManifestTest, CollectsEveryProblem) {
  nlohmann::json j = {{"id", "bad id!"},
                      {"specialist_language", "French"},
                      {"welcome_text", ""},
                      {"questions",
                       {{{"id", "a"}, {"text", "One?"}, {"position", 3}},
                        {{"id", "a"}, {"text", 5}},
                        "junk"}}};
  try {
    FromJson(j);
    FAIL();
  } catch (const InvalidManifest& e) {
    std::set<std::string> fields;
    for (const auto& d : e.diagnostics()) fields.insert(d.field);
    EXPECT_TRUE(fields.count("specialist_language"));
    EXPECT_TRUE(fields.count("questions[1].text"));
    EXPECT_TRUE(fields.count("questions[2]"));
  }
  j["specialist_language"] = "fr";
  j["questions"] = {{{"id", "a"}, {"text", "One?"}, {"position", 3}},
                    {{"id", "a"}, {"text", "Two?"}}};
  try {
    FromJson(j);
    FAIL();
  } catch (const InvalidManifest& e) {
    std::set<std::string> fields;
    for (const auto& d : e.diagnostics()) fields.insert(d.field);
    EXPECT_EQ(fields, (std::set<std::string>{"id", "welcome_text", "questions[0].position",
                                             "questions[1].id"}));
  }
}

TEST(ManifestTest, LoadErrors) {
  TempDir tmp;
  try {
    LoadQuestionnaire(tmp.path() / "missing.manifest");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
  WriteFileAtomic(tmp.path() / "broken.manifest", "{not json");
  EXPECT_THROW(LoadQuestionnaire(tmp.path() / "broken.manifest"), InvalidManifest);
}

TEST(FromDocumentTest, NoQuestions) {
  EXPECT_THROW(FromDocument("Nothing to ask.", "x", "", LanguageTag("en"), "Hi"), InvalidManifest);
}

// Fails on the n-th synthesis.
class FailingTts : public providers::TextToSpeech {
 public:
  explicit FailingTts(int fail_at) : fail_at_(fail_at) {}
  audio::AudioClip Synthesize(std::string_view text, const LanguageTag& language,
                              double rate) override {
    if (++calls_ == fail_at_) throw Error(ErrorCode::kProviderUnavailable, "scripted");
    return inner_.Synthesize(text, language, rate);
  }

 private:
  int fail_at_;
  int calls_ = 0;
  providers::MockTextToSpeech inner_;
};

TEST(PrerenderTest, OneFilePerQuestionWithTranslatedText) {
  TempDir tmp;
  providers::MockTextToSpeech tts;
  providers::MockTranslator translator(fs::path(VOICECARE_SOURCE_DIR) / "data/lexicons");
  Questionnaire q = FromDocument("Comment allez-vous? Avez-vous bien dormi? Avez-vous mal?", "fq",
                                 "", LanguageTag("fr"), "Bonjour");
  auto cache = PrerenderPrompts(q, tts, translator, LanguageTag("en"), tmp.path() / "en");
  ASSERT_EQ(cache.questions.size(), 3u);
  EXPECT_EQ(cache.language, LanguageTag("en"));
  const std::vector<std::string> expected = {"How are you?", "Did you sleep well?",
                                             "Are you in pain?"};
  for (int i = 0; i < 3; ++i) {
    auto clip = audio::ReadWavFile(cache.questions.at(q.questions[i].id));
    EXPECT_EQ(clip.format(), audio::kDriverFormat);
    EXPECT_EQ(clip.tag("text"), expected[i]);
    EXPECT_EQ(clip.tag("language"), "en");
  }
  EXPECT_EQ(audio::ReadWavFile(cache.welcome).tag("text"), "Hello");

  // Same language: no translation.
  auto fr = PrerenderPrompts(q, tts, translator, LanguageTag("fr"), tmp.path() / "fr");
  EXPECT_EQ(audio::ReadWavFile(fr.questions.at("q2")).tag("text"), "Avez-vous bien dormi?");
}

TEST(PrerenderTest, Deterministic) {
  TempDir tmp;
  providers::MockTextToSpeech tts;
  providers::MockTranslator translator;
  auto a = PrerenderPrompts(Sample(), tts, translator, LanguageTag("fr"), tmp.path() / "a");
  auto b = PrerenderPrompts(Sample(), tts, translator, LanguageTag("fr"), tmp.path() / "b");
  for (const auto& [id, file] : a.questions) {
    EXPECT_EQ(ReadFileBytes(file), ReadFileBytes(b.questions.at(id)));
  }
  // Re-rendering in place replaces the cache with identical bytes.
  const std::string before = ReadFileBytes(a.questions.at("q1"));
  PrerenderPrompts(Sample(), tts, translator, LanguageTag("fr"), tmp.path() / "a");
  EXPECT_EQ(ReadFileBytes(a.questions.at("q1")), before);
}

TEST(PrerenderTest, FailureLeavesNothingVisible) {
  TempDir tmp;
  providers::MockTranslator translator;
  FailingTts tts(3);  // welcome, q1, then q2 fails
  EXPECT_THROW(PrerenderPrompts(Sample(), tts, translator, LanguageTag("fr"), tmp.path() / "c"),
               Error);
  EXPECT_FALSE(fs::exists(tmp.path() / "c"));
  EXPECT_TRUE(fs::is_empty(tmp.path()));
}

TEST(PrerenderTest, FailureKeepsPreviousCache) {
  TempDir tmp;
  providers::MockTranslator translator;
  providers::MockTextToSpeech good;
  PrerenderPrompts(Sample(), good, translator, LanguageTag("fr"), tmp.path() / "c");
  FailingTts bad(2);
  EXPECT_THROW(PrerenderPrompts(Sample(), bad, translator, LanguageTag("fr"), tmp.path() / "c"),
               Error);
  auto cache = LoadPromptCache(tmp.path() / "c");
  EXPECT_EQ(cache.questions.size(), 3u);
  for (const auto& [id, file] : cache.questions) EXPECT_TRUE(fs::exists(file));
}

}  // namespace
}  // namespace voicecare::questionnaire
