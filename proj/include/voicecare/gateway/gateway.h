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

// REST front end: questionnaire CRUD, session execution from uploaded WAV
// files, results and advice. See docs/rest-api.md.

#ifndef VOICECARE_GATEWAY_GATEWAY_H_
#define VOICECARE_GATEWAY_GATEWAY_H_

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "voicecare/providers/provider.h"
#include "voicecare/session/session.h"
#include "voicecare/store/store.h"

namespace voicecare::gateway {

struct GatewayConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path data_root = "voicecare-data";
  providers::ProviderConfig providers;
  session::SessionPolicy policy;
};

using EnvLookup = std::function<const char*(const char*)>;

// Overrides fields from VOICECARE_* variables (names in docs/rest-api.md).
// Throws Error(kInvalidArgument) for a value that does not parse.
void ApplyEnvironment(GatewayConfig& config, const EnvLookup& getenv);
void ApplyEnvironment(GatewayConfig& config);

// Throws Error(kInvalidArgument) for bad settings.
void Validate(const GatewayConfig& config);

// A handler outcome: JSON, or a file to stream back.
struct Reply {
  int status = 200;
  nlohmann::json body;
  std::optional<std::filesystem::path> file;
};

// One multipart form part.
struct Upload {
  std::string field;
  std::string content;
};

using Query = std::map<std::string, std::string>;

// Request handlers. None of them throws: errors come back as
// {"error", "message"} bodies with the matching status.
class Gateway {
 public:
  // Builds providers from config.providers. Throws Error(kStorageFailure)
  // when the data root is not writable.
  explicit Gateway(GatewayConfig config);
  Gateway(GatewayConfig config, providers::Providers providers);

  const GatewayConfig& config() const { return config_; }
  store::Store& store() { return *store_; }

  // JSON manifest, or a plain-text document when `content_type` is
  // text/plain (title etc. then come from `query`).
  Reply CreateQuestionnaire(const std::string& body, const std::string& content_type,
                            const Query& query);
  Reply ImportDocument(const std::string& body);
  Reply ListQuestionnaires() const;
  Reply GetQuestionnaire(const std::string& id) const;

  // Fields: questionnaire_id, device_id, welcome, answer-<n>. Repeating a
  // field supplies the reply to the next attempt.
  Reply SubmitSession(const std::vector<Upload>& parts);
  Reply ListSessions(const Query& query) const;
  Reply GetSession(const std::string& id) const;
  Reply GetResults(const std::string& id) const;
  Reply AttachAdvice(const std::string& id, const std::string& body);
  Reply GetAudio(const std::string& id, const std::string& file) const;

 private:
  std::mutex& DeviceLock(const std::string& device_id);
  std::string NewQuestionnaireId() const;
  Reply Create(const questionnaire::Questionnaire& q);

  GatewayConfig config_;
  providers::Providers providers_;
  std::unique_ptr<store::Store> store_;
  std::mutex devices_mu_;
  std::map<std::string, std::unique_ptr<std::mutex>> devices_;
};

// Serves a Gateway over HTTP.
class GatewayServer {
 public:
  explicit GatewayServer(Gateway& gateway);
  ~GatewayServer();

  GatewayServer(const GatewayServer&) = delete;
  GatewayServer& operator=(const GatewayServer&) = delete;

  // Binds (port 0 picks a free one) and serves on a background thread.
  // Returns the bound port.
  int Start(const std::string& host = "127.0.0.1", int port = 0);
  // Binds and serves on the calling thread until Stop(). `on_bound` sees
  // the port before the first request.
  void Listen(const std::string& host, int port, const std::function<void(int)>& on_bound = {});
  void Stop();

  std::string base_url() const;

 private:
  struct Impl;
  int Bind(const std::string& host, int port);

  Gateway& gateway_;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
  std::string host_;
  int port_ = 0;
};

}  // namespace voicecare::gateway

#endif  // VOICECARE_GATEWAY_GATEWAY_H_
