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


#include "voicecare/providers/mock.h"

#include <gtest/gtest.h>

#include <random>

#include "../testing/audio_generators.h"
#include "voicecare/audio/convert.h"
#include "voicecare/audio/wav.h"
#include "voicecare/error.h"

namespace voicecare::providers {
namespace {

using audio::AudioClip;

const std::filesystem::path kData = std::filesystem::path(VOICECARE_SOURCE_DIR) / "data";

LanguageTag L(const char* code) { return LanguageTag(code); }

AudioClip ThroughWav(const AudioClip& clip) { return audio::ParseWav(audio::WriteWav(clip)); }

void ExpectCode(ErrorCode code, const std::function<void()>& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << ErrorCodeName(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(LanguageTagTest, Validation) {
  EXPECT_EQ(L("fr").code(), "fr");
  EXPECT_EQ(L("haw").code(), "haw");
  for (const char* bad : {"", "f", "FR", "fr-CA", "abcd", "f1"}) {
    ExpectCode(ErrorCode::kInvalidArgument, [&] { LanguageTag t(bad); });
  }
}

TEST(SelectLanguageTest, Examples) {
  std::vector<LanguageGuess> a = {{L("fr"), 0.9}, {L("en"), 0.05}};
  EXPECT_EQ(SelectLanguage(a), L("fr"));
  std::vector<LanguageGuess> tie = {{L("fr"), 0.5}, {L("en"), 0.5}};
  EXPECT_EQ(SelectLanguage(tie), L("en"));
  ExpectCode(ErrorCode::kEmptyGuessList, [] { SelectLanguage({}); });
}

TEST(SelectLanguageTest, InvariantUnderPositiveRescaling) {
  std::mt19937_64 rng(7);
  const std::vector<std::string> codes = {"en", "es", "fr", "de", "it"};
  std::uniform_int_distribution<int> level(0, 4);  // coarse levels force ties
  std::uniform_real_distribution<double> scale(0.01, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<LanguageGuess> g;
    for (const auto& c : codes) g.push_back({LanguageTag(c), level(rng) / 4.0});
    std::shuffle(g.begin(), g.end(), rng);
    // Power-of-two factors keep the scaled values exact.
    const double k = std::ldexp(1.0, -static_cast<int>(scale(rng) * 8));
    auto scaled = g;
    for (auto& x : scaled) x.confidence *= k;
    EXPECT_EQ(SelectLanguage(g), SelectLanguage(scaled));
    // Oracle: max confidence, smallest code.
    double best = -1;
    std::string best_code;
    for (const auto& x : g) {
      if (x.confidence > best || (x.confidence == best && x.language.code() < best_code)) {
        best = x.confidence;
        best_code = x.language.code();
      }
    }
    EXPECT_EQ(SelectLanguage(g).code(), best_code);
  }
}

TEST(MockTtsTest, MetadataAndFormat) {
  MockTextToSpeech tts;
  AudioClip clip = tts.Synthesize("hello", L("en"), 1.0);
  EXPECT_EQ(clip.format(), audio::kDriverFormat);
  EXPECT_EQ(clip.tag("text"), "hello");
  EXPECT_EQ(clip.tag("language"), "en");
  EXPECT_EQ(clip.frame_count(), 5u * 2880u);  // 0.06 s per character
  EXPECT_GT(audio::RmsLevel(clip), 0.1);
}

TEST(MockTtsTest, RateHalvesDuration) {
  MockTextToSpeech tts;
  const auto slow = tts.Synthesize("how are you today?", L("en"), 1.0);
  const auto fast = tts.Synthesize("how are you today?", L("en"), 2.0);
  EXPECT_NEAR(fast.duration_seconds(), slow.duration_seconds() / 2.0,
              1.0 / audio::kDriverFormat.sample_rate_hz);
  EXPECT_GT(fast.duration_seconds(), 0.0);
}

TEST(MockTtsTest, DurationCountsCodePoints) {
  MockTextToSpeech tts;
  EXPECT_EQ(tts.Synthesize("日本", L("ja"), 1.0).frame_count(),
            tts.Synthesize("ab", L("en"), 1.0).frame_count());
}

TEST(MockTtsTest, EmptyTextAndBadRate) {
  MockTextToSpeech tts;
  ExpectCode(ErrorCode::kEmptyText, [&] { tts.Synthesize("", L("en"), 1.0); });
  ExpectCode(ErrorCode::kEmptyText, [&] { tts.Synthesize(" \n\t", L("en"), 1.0); });
  ExpectCode(ErrorCode::kInvalidArgument, [&] { tts.Synthesize("a", L("en"), 0.0); });
}

TEST(MockTtsTest, Deterministic) {
  MockTextToSpeech tts;
  EXPECT_EQ(audio::WriteWav(tts.Synthesize("Avez-vous mal?", L("fr"), 1.0)),
            audio::WriteWav(tts.Synthesize("Avez-vous mal?", L("fr"), 1.0)));
}

TEST(MockSttTest, Examples) {
  MockTextToSpeech tts;
  MockSpeechToText stt;
  auto clip = ThroughWav(tts.Synthesize("bonjour", L("fr"), 1.0));
  Transcript t = stt.Transcribe(clip, L("fr"));
  EXPECT_EQ(t.text, "bonjour");
  EXPECT_EQ(t.confidence, 1.0);
  EXPECT_EQ(t.language, L("fr"));
  EXPECT_EQ(stt.Transcribe(clip, L("en")).confidence, 0.5);
  ExpectCode(ErrorCode::kNoSpeech,
             [&] { stt.Transcribe(AudioClip::Silence(audio::kDriverFormat, 4800), L("fr")); });
}

TEST(MockSttTest, UntaggedSpeechHasZeroConfidence) {
  MockSpeechToText stt;
  auto tone = testing::Sine(audio::kDriverFormat, 440, 0.3, 4800);
  Transcript t = stt.Transcribe(tone, L("en"));
  EXPECT_EQ(t.text, "");
  EXPECT_EQ(t.confidence, 0.0);
}

TEST(MockRoundTripTest, TranscribeInvertsSynthesize) {
  std::mt19937_64 rng(11);
  MockTextToSpeech tts;
  MockSpeechToText stt;
  MockLanguageDetector detector({L("en"), L("es"), L("fr")});
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::string text = testing::RandomText(rng, 30);
    if (text.find_first_not_of(" \t\n\r") == std::string::npos) continue;
    for (const char* code : {"en", "es", "fr"}) {
      auto clip = ThroughWav(tts.Synthesize(text, L(code), 1.0));
      EXPECT_EQ(stt.Transcribe(clip, L(code)).text, text);
      EXPECT_EQ(SelectLanguage(detector.DetectLanguage(clip)), L(code));
      ++checked;
    }
  }
  EXPECT_GT(checked, 300);
}

TEST(MockDetectorTest, TaggedFrench) {
  MockTextToSpeech tts;
  MockLanguageDetector detector({L("en"), L("es"), L("fr")});
  auto guesses = detector.DetectLanguage(tts.Synthesize("bonjour", L("fr"), 1.0));
  ASSERT_EQ(guesses.size(), 3u);
  EXPECT_EQ(guesses[0], (LanguageGuess{L("fr"), 0.9}));
  EXPECT_EQ(guesses[1].language, L("en"));
  EXPECT_DOUBLE_EQ(guesses[1].confidence, 0.05);
  EXPECT_EQ(guesses[2].language, L("es"));
  EXPECT_DOUBLE_EQ(guesses[2].confidence, 0.05);
}

TEST(MockDetectorTest, UnknownTagJoinsTheList) {
  MockTextToSpeech tts;
  MockLanguageDetector detector({L("en"), L("fr")});
  auto guesses = detector.DetectLanguage(tts.Synthesize("hola", L("es"), 1.0));
  ASSERT_EQ(guesses.size(), 3u);
  EXPECT_EQ(guesses[0].language, L("es"));
}

TEST(MockDetectorTest, SortedAndInRange) {
  std::mt19937_64 rng(3);
  MockTextToSpeech tts;
  MockLanguageDetector detector({L("en"), L("es"), L("fr"), L("de")});
  const std::vector<std::string> codes = {"en", "es", "fr", "de", "it", "pt"};
  for (int trial = 0; trial < 30; ++trial) {
    const auto& code = codes[trial % codes.size()];
    auto guesses = detector.DetectLanguage(tts.Synthesize("x y", LanguageTag(code), 1.0));
    ASSERT_FALSE(guesses.empty());
    for (std::size_t i = 0; i < guesses.size(); ++i) {
      EXPECT_GE(guesses[i].confidence, 0.0);
      EXPECT_LE(guesses[i].confidence, 1.0);
      if (i > 0) {
        EXPECT_TRUE(guesses[i - 1].confidence > guesses[i].confidence ||
                    (guesses[i - 1].confidence == guesses[i].confidence &&
                     guesses[i - 1].language < guesses[i].language));
      }
    }
  }
}

TEST(MockDetectorTest, UntaggedIsUniformAndSilenceFails) {
  MockLanguageDetector detector({L("fr"), L("en")});
  auto guesses = detector.DetectLanguage(testing::Sine(audio::kDriverFormat, 300, 0.3, 4800));
  ASSERT_EQ(guesses.size(), 2u);
  EXPECT_EQ(guesses[0], (LanguageGuess{L("en"), 0.5}));
  EXPECT_EQ(SelectLanguage(guesses), L("en"));
  ExpectCode(ErrorCode::kNoSpeech, [&] {
    detector.DetectLanguage(AudioClip::Silence(audio::kDriverFormat, 4800));
  });
}

TEST(MockTranslatorTest, Examples) {
  MockTranslator tr;
  tr.AddLexicon(L("fr"), L("en"), TranslationLexicon::Parse("bonjour\thello\n"));
  EXPECT_EQ(tr.Translate("bonjour", L("fr"), L("fr")), "bonjour");
  EXPECT_EQ(tr.Translate("bonjour", L("fr"), L("en")), "hello");
  EXPECT_EQ(tr.Translate("xyzzy", L("fr"), L("en")), "xyzzy");
  EXPECT_EQ(tr.Translate("Bonjour, xyzzy!", L("fr"), L("en")), "Hello, xyzzy!");
  // Reverse direction from the same table.
  EXPECT_EQ(tr.Translate("hello", L("en"), L("fr")), "bonjour");
  // No table at all: passthrough.
  EXPECT_EQ(tr.Translate("bonjour", L("fr"), L("de")), "bonjour");
}

TEST(MockTranslatorTest, BundledFrenchAnswers) {
  MockTranslator tr(kData / "lexicons");
  EXPECT_EQ(tr.Translate("Je suis si heureux de vivre ici", L("fr"), L("en")),
            "I'm so happy to live here");
  EXPECT_EQ(tr.Translate("Je déteste ce monde", L("fr"), L("en")), "I hate this world");
  EXPECT_EQ(tr.Translate("Je ne supporte pas ça. Je ne comprends pas pourquoi les gens font ça.",
                         L("fr"), L("en")),
            "I can't tolerate this. I don't understand why people do that.");
}

TEST(MockTranslatorTest, MissingDirectory) {
  ExpectCode(ErrorCode::kNotFound, [] { MockTranslator tr(kData / "no-such-dir"); });
}

TEST(MockEmotionTest, PaperFixtures) {
  MockEmotionAnalyzer analyzer(MockEmotionAnalyzer::LoadFixtures(kData / "fixtures/emotions.json"),
                               {});
  const auto happy = analyzer.AnalyzeEmotion("I'm so happy to live here");
  EXPECT_EQ(happy.joy, 0.87);
  EXPECT_EQ(happy.anger, 0.01);
  EXPECT_EQ(happy.sadness, 0.04);
  EXPECT_EQ(happy.fear, 0.01);
  EXPECT_EQ(happy.disgust, 0.01);
  const auto sad = analyzer.AnalyzeEmotion("I hate this world");
  EXPECT_EQ(sad.joy, 0.09);
  EXPECT_EQ(sad.anger, 0.05);
  EXPECT_EQ(sad.sadness, 0.72);
  EXPECT_EQ(sad.fear, 0.07);
  EXPECT_EQ(sad.disgust, 0.06);
  const auto angry =
      analyzer.AnalyzeEmotion("I can't tolerate this. I don't understand why people do that.");
  EXPECT_EQ(angry.anger, 0.85);
  EXPECT_EQ(angry.joy, 0.02);
}

TEST(MockEmotionTest, LexiconScoring) {
  auto lex = EmotionLexicon::Parse("happy\tjoy\t0.6\nsad\tsadness\t0.8\nsad\tsentiment\t-2\n");
  MockEmotionAnalyzer analyzer({}, lex);
  EXPECT_EQ(analyzer.AnalyzeEmotion("nothing relevant"), EmotionScores{});
  const auto s = analyzer.AnalyzeEmotion("Happy but SAD");
  // 0.6 + 0.8 > 1, so both are scaled by 1/1.4.
  EXPECT_DOUBLE_EQ(s.joy, 0.6 / 1.4);
  EXPECT_DOUBLE_EQ(s.sadness, 0.8 / 1.4);
  EXPECT_EQ(s.sentiment, -1.0);
  EXPECT_DOUBLE_EQ(analyzer.AnalyzeEmotion("happy").joy, 0.6);
  ExpectCode(ErrorCode::kEmptyText, [&] { analyzer.AnalyzeEmotion("  "); });
}

TEST(MockEmotionTest, LexiconPropertiesOnRandomText) {
  auto lex = EmotionLexicon::Load(kData / "fixtures/emotion-lexicon.tsv");
  MockEmotionAnalyzer analyzer({}, lex);
  std::mt19937_64 rng(5);
  const std::vector<std::string> words = {"happy", "sad", "hate", "love", "pain", "the",
                                          "afraid", "gross", "lonely", "good", "x"};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    std::string text = words[pick(rng)];
    for (int k = trial % 9; k > 0; --k) text += " " + words[pick(rng)];
    const auto s = analyzer.AnalyzeEmotion(text);
    double total = 0;
    for (double v : s.emotions()) total += v;
    EXPECT_LE(total, 1.0 + 1e-12);
    EXPECT_NO_THROW(Validate(s));
    EXPECT_EQ(s, analyzer.AnalyzeEmotion(text));
  }
}

TEST(LexiconTest, ParseErrors) {
  ExpectCode(ErrorCode::kInvalidArgument, [] { TranslationLexicon::Parse("no tab here\n"); });
  ExpectCode(ErrorCode::kInvalidArgument, [] { EmotionLexicon::Parse("a\tjoyful\t1\n"); });
  ExpectCode(ErrorCode::kInvalidArgument, [] { EmotionLexicon::Parse("a\tjoy\tlots\n"); });
  EXPECT_EQ(TranslationLexicon::Parse("# c\n\r\na\tb\r\n").size(), 1u);
}

TEST(LexiconTest, LongestMatchWins) {
  auto lex = TranslationLexicon::Parse("je\tI\nje suis\tI am\nsuis\tfollow\n");
  EXPECT_EQ(lex.Apply("je suis là"), "I am là");
  EXPECT_EQ(lex.Apply("suis je"), "follow I");
}

TEST(LexiconTest, TokenizeReassembles) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    std::string text = testing::RandomText(rng, 25);
    Tokenized t = Tokenize(text);
    std::string joined = t.leading;
    for (std::size_t k = 0; k < t.words.size(); ++k) joined += t.words[k] + t.separators[k];
    EXPECT_EQ(joined, text);
  }
}

TEST(ProviderConfigTest, RemoteNeedsUrl) {
  ProviderConfig c;
  c.mode = ProviderConfig::Mode::kRemote;
  ExpectCode(ErrorCode::kInvalidArgument, [&] { Validate(c); });
  c.remote_base_url = "http://127.0.0.1:1";
  EXPECT_NO_THROW(Validate(c));
}

TEST(ProviderConfigTest, MockFromBundledData) {
  ProviderConfig c;
  c.translation_lexicon_dir = kData / "lexicons";
  c.emotion_fixtures = kData / "fixtures/emotions.json";
  c.emotion_lexicon = kData / "fixtures/emotion-lexicon.tsv";
  Providers p = MakeProviders(c);
  EXPECT_EQ(p.emotion->AnalyzeEmotion("I hate this world").sadness, 0.72);
  EXPECT_EQ(p.translator->Translate("merci", L("fr"), L("en")), "thank you");
}

}  // namespace
}  // namespace voicecare::providers
