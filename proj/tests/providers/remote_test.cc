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


#include "voicecare/providers/remote.h"

#include <gtest/gtest.h>

#include "httplib.h"
#include "voicecare/audio/wav.h"
#include "voicecare/error.h"
#include "voicecare/providers/mock.h"
#include "voicecare/providers/server.h"
#include "voicecare/providers/wire.h"

namespace voicecare::providers {
namespace {

const std::filesystem::path kData = std::filesystem::path(VOICECARE_SOURCE_DIR) / "data";

LanguageTag L(const char* code) { return LanguageTag(code); }

Providers Mocks() {
  ProviderConfig c;
  c.translation_lexicon_dir = kData / "lexicons";
  c.emotion_fixtures = kData / "fixtures/emotions.json";
  return MakeMockProviders(c);
}

// A provider that always fails with a plain exception.
class Exploding : public EmotionAnalyzer {
 public:
  EmotionScores AnalyzeEmotion(std::string_view) override { throw std::runtime_error("boom"); }
};

class RemoteTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_ = std::make_unique<ProviderServer>(Mocks());
    server_->Start();
    remote_ = MakeRemoteProviders(server_->base_url(), 5.0);
  }

  std::unique_ptr<ProviderServer> server_;
  Providers remote_;
};

TEST_F(RemoteTest, MatchesMocksOneRequestPerCall) {
  Providers local = Mocks();
  auto before = RemoteRequestCount();
  auto clip = remote_.tts->Synthesize("Avez-vous mal?", L("fr"), 1.0);
  EXPECT_EQ(RemoteRequestCount(), before + 1);
  EXPECT_EQ(clip, local.tts->Synthesize("Avez-vous mal?", L("fr"), 1.0));

  EXPECT_EQ(remote_.stt->Transcribe(clip, L("fr")), local.stt->Transcribe(clip, L("fr")));
  EXPECT_EQ(RemoteRequestCount(), before + 2);

  EXPECT_EQ(remote_.detector->DetectLanguage(clip), local.detector->DetectLanguage(clip));
  EXPECT_EQ(RemoteRequestCount(), before + 3);

  EXPECT_EQ(remote_.translator->Translate("Je déteste ce monde", L("fr"), L("en")),
            "I hate this world");
  EXPECT_EQ(RemoteRequestCount(), before + 4);

  EXPECT_EQ(remote_.emotion->AnalyzeEmotion("I hate this world"),
            local.emotion->AnalyzeEmotion("I hate this world"));
  EXPECT_EQ(RemoteRequestCount(), before + 5);
  EXPECT_EQ(server_->requests_served(), 5u);
}

TEST_F(RemoteTest, ErrorsCrossTheWire) {
  try {
    remote_.stt->Transcribe(audio::AudioClip::Silence(audio::kDriverFormat, 960), L("en"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoSpeech);
  }
  try {
    remote_.tts->Synthesize("", L("en"), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyText);
  }
}

TEST_F(RemoteTest, RetrySafeAfterServerError) {
  Providers p = Mocks();
  p.emotion = std::make_shared<Exploding>();
  ProviderServer bad(p);
  bad.Start();
  RemoteEmotionAnalyzer analyzer(bad.base_url(), 5.0);
  for (int i = 0; i < 2; ++i) {
    try {
      analyzer.AnalyzeEmotion("x");
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kProviderUnavailable);
    }
  }
  // The healthy server and client are unaffected.
  EXPECT_EQ(remote_.emotion->AnalyzeEmotion("I hate this world").sadness, 0.72);
}

TEST(RemoteUnavailableTest, DeadPort) {
  int port;
  {
    ProviderServer s(Mocks());
    port = s.Start();
  }
  RemoteTranslator tr("http://127.0.0.1:" + std::to_string(port), 1.0);
  auto before = RemoteRequestCount();
  try {
    tr.Translate("bonjour", L("fr"), L("en"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProviderUnavailable);
  }
  EXPECT_EQ(RemoteRequestCount(), before + 1);
}

TEST(RemoteUnavailableTest, MalformedResponse) {
  httplib::Server raw;
  raw.Post("/emotion", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("{\"joy\": 7}", "application/json");
  });
  const int port = raw.bind_to_any_port("127.0.0.1");
  std::thread t([&] { raw.listen_after_bind(); });
  raw.wait_until_ready();
  RemoteEmotionAnalyzer analyzer("http://127.0.0.1:" + std::to_string(port), 5.0);
  try {
    analyzer.AnalyzeEmotion("x");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProviderUnavailable);
  }
  raw.stop();
  t.join();
}

TEST(HandlerTest, BadRequests) {
  Providers p = Mocks();
  EXPECT_EQ(HandleProviderRequest(p, "/tts", "not json").first, 400);
  EXPECT_EQ(HandleProviderRequest(p, "/tts", "[1]").first, 400);
  EXPECT_EQ(HandleProviderRequest(p, "/tts", R"({"text":"hi"})").first, 400);
  EXPECT_EQ(HandleProviderRequest(p, "/tts", R"({"text":"hi","language":"EN"})").first, 400);
  auto [status, body] = HandleProviderRequest(p, "/stt", R"({"audio":"!!","language":"en"})");
  EXPECT_EQ(status, 400);
  EXPECT_EQ(body["error"], "InvalidArgument");
  EXPECT_EQ(HandleProviderRequest(p, "/nope", "{}").first, 404);
}

TEST(WireTest, Base64RoundTrip) {
  std::vector<std::uint8_t> bytes;
  for (int n = 0; n < 70; ++n) {
    EXPECT_EQ(Base64Decode(Base64Encode(bytes)), bytes);
    bytes.push_back(static_cast<std::uint8_t>(n * 37));
  }
  EXPECT_EQ(Base64Encode(std::vector<std::uint8_t>{'M', 'a', 'n'}), "TWFu");
  EXPECT_THROW(Base64Decode("TWF"), Error);
}

}  // namespace
}  // namespace voicecare::providers
