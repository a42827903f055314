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


#include "voicecare/providers/server.h"

#include "httplib.h"
#include "voicecare/providers/wire.h"

namespace voicecare::providers {

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoSpeech:
    case ErrorCode::kEmptyText:
    case ErrorCode::kEmptyGuessList:
      return 422;
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kAlreadyExists:
      return 409;
    case ErrorCode::kProviderUnavailable:
      return 502;
    case ErrorCode::kStorageFailure:
    case ErrorCode::kSourceFailure:
    case ErrorCode::kSinkFailure:
      return 500;
    default:
      return 400;
  }
}

namespace {

nlohmann::json ErrorBody(ErrorCode code, const std::string& message) {
  return {{"error", ErrorCodeName(code)}, {"message", message}};
}

nlohmann::json Dispatch(Providers& p, const std::string& path, const nlohmann::json& req) {
  if (path == "/stt") {
    return p.stt->Transcribe(DecodeAudio(req.at("audio").get<std::string>()),
                             TagFromJson(req.at("language")));
  }
  if (path == "/tts") {
    auto clip = p.tts->Synthesize(req.at("text").get<std::string>(),
                                  TagFromJson(req.at("language")), req.value("rate", 1.0));
    return {{"audio", EncodeAudio(clip)}};
  }
  if (path == "/translate") {
    return {{"text", p.translator->Translate(req.at("text").get<std::string>(),
                                             TagFromJson(req.at("source")),
                                             TagFromJson(req.at("target")))}};
  }
  if (path == "/detect") {
    auto guesses = p.detector->DetectLanguage(DecodeAudio(req.at("audio").get<std::string>()));
    return {{"guesses", guesses}};
  }
  if (path == "/emotion") {
    return p.emotion->AnalyzeEmotion(req.at("text").get<std::string>());
  }
  throw Error(ErrorCode::kNotFound, "no endpoint " + path);
}

}  // namespace

std::pair<int, nlohmann::json> HandleProviderRequest(Providers& providers,
                                                     const std::string& path,
                                                     const std::string& body) {
  try {
    auto req = nlohmann::json::parse(body);
    if (!req.is_object()) throw Error(ErrorCode::kInvalidArgument, "body must be an object");
    return {200, Dispatch(providers, path, req)};
  } catch (const Error& e) {
    return {HttpStatusFor(e.code()), ErrorBody(e.code(), e.detail())};
  } catch (const nlohmann::json::exception& e) {
    return {400, ErrorBody(ErrorCode::kInvalidArgument, e.what())};
  } catch (const std::exception& e) {
    return {500, {{"error", "Internal"}, {"message", e.what()}}};
  }
}

struct ProviderServer::Impl {
  httplib::Server server;
};

ProviderServer::ProviderServer(Providers providers)
    : providers_(std::move(providers)), impl_(std::make_unique<Impl>()) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    ++served_;
    auto [status, body] = HandleProviderRequest(providers_, req.path, req.body);
    res.status = status;
    res.set_content(body.dump(), "application/json");
  };
  for (const char* path : {"/stt", "/tts", "/translate", "/detect", "/emotion"}) {
    impl_->server.Post(path, handler);
  }
}

ProviderServer::~ProviderServer() { Stop(); }

int ProviderServer::Start(const std::string& host, int port) {
  host_ = host;
  port_ = port == 0 ? impl_->server.bind_to_any_port(host)
                    : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (port_ < 0) {
    throw Error(ErrorCode::kProviderUnavailable,
                "cannot bind " + host + ":" + std::to_string(port));
  }
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port_;
}

void ProviderServer::Listen(const std::string& host, int port) {
  host_ = host;
  port_ = port;
  if (!impl_->server.listen(host, port)) {
    throw Error(ErrorCode::kProviderUnavailable,
                "cannot listen on " + host + ":" + std::to_string(port));
  }
}

void ProviderServer::Stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

std::string ProviderServer::base_url() const {
  return "http://" + host_ + ":" + std::to_string(port_);
}

}  // namespace voicecare::providers
