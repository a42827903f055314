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

// Command-line front end: serve, run, import-doc, bench, inspect, synth,
// providers-serve.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "voicecare/audio/convert.h"
#include "voicecare/audio/wav.h"
#include "voicecare/fs.h"
#include "voicecare/gateway/bench.h"
#include "voicecare/gateway/gateway.h"
#include "voicecare/providers/mock.h"
#include "voicecare/providers/server.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace voicecare;

namespace {

// Flags shared by the commands that build a provider stack.
struct StackFlags {
  std::string mode;
  std::string url;
  std::string lexicons;
  std::string fixtures;
  std::string emotion_lexicon;
  int max_repeats = -1;
  double chunk_seconds = 0;
  std::string emotion_language;

  void Register(CLI::App* app) {
    app->add_option("--provider-mode", mode, "mock or remote")
        ->check(CLI::IsMember({"mock", "remote"}));
    app->add_option("--provider-url", url, "remote provider base URL");
    app->add_option("--lexicon-dir", lexicons, "translation lexicon directory (mock)");
    app->add_option("--emotion-fixtures", fixtures, "text -> emotion JSON map (mock)");
    app->add_option("--emotion-lexicon", emotion_lexicon, "emotion keyword lexicon (mock)");
    app->add_option("--max-repeats", max_repeats, "repeats after a silent answer");
    app->add_option("--chunk-seconds", chunk_seconds, "record chunk length");
    app->add_option("--emotion-language", emotion_language, "language scored for emotion");
  }

  // Environment first, flags over it. Mock data defaults to the bundled set.
  gateway::GatewayConfig Config() const {
    gateway::GatewayConfig c;
    const fs::path bundled = VOICECARE_DATA_DIR;
    if (fs::is_directory(bundled)) {
      c.providers.translation_lexicon_dir = bundled / "lexicons";
      c.providers.emotion_fixtures = bundled / "fixtures/emotions.json";
      c.providers.emotion_lexicon = bundled / "fixtures/emotion-lexicon.tsv";
    }
    gateway::ApplyEnvironment(c);
    if (mode == "remote") c.providers.mode = providers::ProviderConfig::Mode::kRemote;
    if (mode == "mock") c.providers.mode = providers::ProviderConfig::Mode::kMock;
    if (!url.empty()) c.providers.remote_base_url = url;
    if (!lexicons.empty()) c.providers.translation_lexicon_dir = lexicons;
    if (!fixtures.empty()) c.providers.emotion_fixtures = fixtures;
    if (!emotion_lexicon.empty()) c.providers.emotion_lexicon = emotion_lexicon;
    if (max_repeats >= 0) c.policy.max_repeats = max_repeats;
    if (chunk_seconds > 0) c.policy.record.chunk_seconds = chunk_seconds;
    if (!emotion_language.empty()) c.policy.emotion_language = providers::LanguageTag(emotion_language);
    return c;
  }
};

// welcome.wav | welcome-<k>.wav, answer-<n>.wav | answer-<n>-<k>.wav, with
// n and k counted from 1.
session::ScriptedAudioIo LoadScript(const fs::path& dir, const capture::RecordPolicy& policy) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kNotFound, "answer directory " + dir.string() + " not found");
  }
  static const std::regex kWelcome(R"(welcome(?:-(\d+))?\.wav)");
  static const std::regex kAnswer(R"(answer-(\d+)(?:-(\d+))?\.wav)");
  std::map<int, audio::AudioClip> welcome;
  std::map<int, std::map<int, audio::AudioClip>> answers;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    std::smatch m;
    if (std::regex_match(name, m, kWelcome)) {
      welcome[m[1].matched ? std::stoi(m[1]) : 1] = audio::ReadWavFile(entry.path());
    } else if (std::regex_match(name, m, kAnswer)) {
      const int n = std::stoi(m[1]);
      if (n < 1) throw Error(ErrorCode::kInvalidArgument, name + ": answers count from 1");
      answers[n - 1][m[2].matched ? std::stoi(m[2]) : 1] = audio::ReadWavFile(entry.path());
    } else if (entry.path().extension() == ".wav") {
      throw Error(ErrorCode::kInvalidArgument, "unexpected file " + name);
    }
  }
  session::ScriptedAudioIo io(policy);
  std::vector<audio::AudioClip> replies;
  for (auto& [k, clip] : welcome) replies.push_back(std::move(clip));
  io.SetWelcomeReplies(std::move(replies));
  for (auto& [pos, attempts] : answers) {
    std::vector<audio::AudioClip> clips;
    for (auto& [k, clip] : attempts) clips.push_back(std::move(clip));
    io.SetAnswers(pos, std::move(clips));
  }
  return io;
}

questionnaire::Questionnaire LoadManifest(const std::string& path_or_id,
                                          const std::string& data_root) {
  if (fs::is_regular_file(path_or_id)) return questionnaire::LoadQuestionnaire(path_or_id);
  if (!data_root.empty()) return store::Store(data_root).LoadQuestionnaire(path_or_id);
  throw Error(ErrorCode::kNotFound, "no manifest file " + path_or_id);
}

fs::path ScratchDir(const std::string& tag) {
  std::random_device rd;
  auto dir = fs::temp_directory_path() / ("voicecare-" + tag + "-" + std::to_string(rd()));
  fs::create_directories(dir);
  return dir;
}

void PrintClip(const audio::AudioClip& clip) {
  std::cout << "format    " << audio::ToString(clip.format()) << "\n"
            << "frames    " << clip.frame_count() << "\n"
            << "duration  " << clip.duration_seconds() << " s\n"
            << "rms       " << audio::RmsLevel(clip) << "\n";
  for (const auto& [k, v] : clip.metadata()) std::cout << "meta      " << k << " = " << v << "\n";
}

int Inspect(const fs::path& path) {
  if (fs::is_directory(path)) {
    const auto manifest = path / store::kManifestName;
    const json j = json::parse(ReadFileBytes(manifest));
    const auto record = records::SessionFromJson(j);
    std::cout << records::ToJson(record).dump(2) << "\n";
    for (const auto& problem : records::Check(record)) std::cout << "problem: " << problem << "\n";
    return 0;
  }
  if (path.extension() == ".wav") {
    PrintClip(audio::ReadWavFile(path));
    return 0;
  }
  try {
    const auto q = questionnaire::LoadQuestionnaire(path);
    std::cout << questionnaire::ToJson(q).dump(2) << "\n";
    return 0;
  } catch (const questionnaire::InvalidManifest& e) {
    for (const auto& d : e.diagnostics()) std::cout << d.field << ": " << d.message << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"voicecare: voice questionnaire engine"};
  app.require_subcommand(1);

  StackFlags stack;

  auto* serve = app.add_subcommand("serve", "run the REST gateway");
  std::string host;
  int port = -1;
  std::string data_root;
  serve->add_option("--host", host, "listen address");
  serve->add_option("--port", port, "listen port (0 picks a free one)");
  serve->add_option("--data-root", data_root, "store directory");
  stack.Register(serve);

  auto* run = app.add_subcommand("run", "run one session from a directory of WAV answers");
  std::string manifest;
  std::string answers;
  std::string device = "cli";
  run->add_option("--questionnaire", manifest, "manifest file, or id in --data-root")
      ->required();
  run->add_option("--answers", answers, "directory of welcome/answer WAV files")->required();
  run->add_option("--data-root", data_root, "store directory (omit to skip persistence)");
  run->add_option("--device", device, "device id");
  stack.Register(run);

  auto* import = app.add_subcommand("import-doc", "extract questions from a text document");
  std::string doc;
  std::string id;
  std::string title;
  std::string language = "en";
  std::string welcome = "Hello, I am your assistant. Please say something.";
  std::string out;
  import->add_option("document", doc, "plain-text document")->required();
  import->add_option("--id", id, "questionnaire id")->required();
  import->add_option("--title", title, "title (defaults to the id)");
  import->add_option("--language", language, "specialist language");
  import->add_option("--welcome", welcome, "welcome text");
  import->add_option("-o,--out", out, "write the manifest here instead of stdout");
  import->add_option("--data-root", data_root, "also save into this store");

  auto* bench = app.add_subcommand("bench", "time each pipeline stage per question");
  int repetitions = 5;
  std::string csv;
  bench->add_option("--questionnaire", manifest, "manifest file, or id in --data-root")
      ->required();
  bench->add_option("--answers", answers, "directory of welcome/answer WAV files")->required();
  bench->add_option("--repetitions", repetitions, "sessions to run")->check(CLI::PositiveNumber);
  bench->add_option("--csv", csv, "also write the CSV table here");
  bench->add_option("--data-root", data_root, "store directory (default: a scratch dir)");
  stack.Register(bench);

  auto* inspect = app.add_subcommand("inspect", "describe a WAV file, manifest or session");
  std::string target;
  inspect->add_option("path", target, "WAV file, manifest, or session directory")->required();

  auto* synth = app.add_subcommand("synth", "write a mock-synthesized utterance");
  std::string text;
  double rate = 1.0;
  synth->add_option("text", text, "what to say")->required();
  synth->add_option("--language", language, "language tag");
  synth->add_option("--rate", rate, "speech rate");
  synth->add_option("-o,--out", out, "output WAV")->required();

  auto* pserve = app.add_subcommand("providers-serve", "serve the provider protocol (mock stack)");
  pserve->add_option("--host", host, "listen address");
  pserve->add_option("--port", port, "listen port");
  stack.Register(pserve);

  CLI11_PARSE(app, argc, argv);

  try {
    if (serve->parsed()) {
      auto config = stack.Config();
      if (!host.empty()) config.host = host;
      if (port >= 0) config.port = port;
      if (!data_root.empty()) config.data_root = data_root;
      gateway::Gateway gw(config);
      gateway::GatewayServer server(gw);
      server.Listen(config.host, config.port, [&](int bound) {
        std::cout << "listening on http://" << config.host << ":" << bound << std::endl;
      });
      return 0;
    }
    if (run->parsed()) {
      auto config = stack.Config();
      gateway::Validate(config);
      const auto q = LoadManifest(manifest, data_root);
      std::unique_ptr<store::Store> store;
      if (!data_root.empty()) store = std::make_unique<store::Store>(data_root);
      session::SessionEngine engine(providers::MakeProviders(config.providers), config.policy,
                                    store.get());
      auto io = LoadScript(answers, config.policy.record);
      try {
        const auto result = engine.Run(q, io, device);
        std::cout << records::ToJson(result.record).dump(2) << std::endl;
        return 0;
      } catch (const session::SessionAborted& e) {
        std::cout << records::ToJson(e.record()).dump(2) << std::endl;
        std::cerr << "session aborted: " << e.what() << std::endl;
        return 2;
      }
    }
    if (import->parsed()) {
      const auto q = questionnaire::FromDocument(ReadFileBytes(doc), id, title.empty() ? id : title,
                                                 providers::LanguageTag(language), welcome);
      if (!data_root.empty()) store::Store(data_root).SaveQuestionnaire(q);
      if (out.empty()) {
        std::cout << questionnaire::ToJson(q).dump(2) << std::endl;
      } else {
        questionnaire::SaveQuestionnaire(q, out);
      }
      return 0;
    }
    if (bench->parsed()) {
      auto config = stack.Config();
      gateway::Validate(config);
      const auto q = LoadManifest(manifest, data_root);
      const bool scratch = data_root.empty();
      const fs::path root = scratch ? ScratchDir("bench") : fs::path(data_root);
      {
        store::Store store(root);
        session::SessionEngine engine(providers::MakeProviders(config.providers), config.policy,
                                      &store);
        const auto script = LoadScript(answers, config.policy.record);
        auto make_io = [&] { return std::make_unique<session::ScriptedAudioIo>(script); };
        const auto report = gateway::RunBench(engine, q, make_io, repetitions);
        std::cout << gateway::FormatTable(report);
        if (!csv.empty()) WriteFileAtomic(csv, gateway::FormatCsv(report));
      }
      if (scratch) fs::remove_all(root);
      return 0;
    }
    if (inspect->parsed()) return Inspect(target);
    if (synth->parsed()) {
      const auto clip =
          providers::MockTextToSpeech().Synthesize(text, providers::LanguageTag(language), rate);
      audio::WriteWavFile(clip, out);
      return 0;
    }
    if (pserve->parsed()) {
      auto config = stack.Config();
      config.providers.mode = providers::ProviderConfig::Mode::kMock;
      providers::ProviderServer server(providers::MakeProviders(config.providers));
      const std::string h = host.empty() ? "127.0.0.1" : host;
      const int p = port >= 0 ? port : 8090;
      std::cout << "provider protocol on http://" << h << ":" << p << std::endl;
      server.Listen(h, p);
      return 0;
    }
  } catch (const questionnaire::InvalidManifest& e) {
    std::cerr << e.what() << "\n";
    for (const auto& d : e.diagnostics()) std::cerr << "  " << d.field << ": " << d.message << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
