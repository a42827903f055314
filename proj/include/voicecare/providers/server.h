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


#ifndef VOICECARE_PROVIDERS_SERVER_H_
#define VOICECARE_PROVIDERS_SERVER_H_

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <thread>

#include "json.hpp"
#include "voicecare/error.h"
#include "voicecare/providers/provider.h"

namespace voicecare::providers {

// HTTP status used on the wire for an error code.
int HttpStatusFor(ErrorCode code);

// Handles one protocol request ("/stt", "/tts", ...) against `providers`.
// Returns the HTTP status and JSON body. Never throws.
std::pair<int, nlohmann::json> HandleProviderRequest(Providers& providers,
                                                     const std::string& path,
                                                     const std::string& body);

// Serves the provider protocol for any Providers bundle on a background
// thread.
class ProviderServer {
 public:
  explicit ProviderServer(Providers providers);
  ~ProviderServer();

  ProviderServer(const ProviderServer&) = delete;
  ProviderServer& operator=(const ProviderServer&) = delete;

  // Binds host:port (port 0 picks a free one) and starts serving. Returns
  // the bound port.
  int Start(const std::string& host = "127.0.0.1", int port = 0);
  // Blocks serving on the calling thread.
  void Listen(const std::string& host, int port);
  void Stop();

  std::string base_url() const;
  std::uint64_t requests_served() const { return served_; }

 private:
  struct Impl;
  Providers providers_;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
  std::string host_;
  int port_ = 0;
  std::atomic<std::uint64_t> served_{0};
};

}  // namespace voicecare::providers

#endif  // VOICECARE_PROVIDERS_SERVER_H_
