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

#include "httplib.h"
#include "voicecare/fs.h"
#include "voicecare/gateway/gateway.h"

namespace voicecare::gateway {
namespace {

constexpr std::size_t kMaxPayload = std::size_t{512} << 20;

void Send(const Reply& reply, httplib::Response& res) {
  res.status = reply.status;
  if (reply.file) {
    res.set_content(ReadFileBytes(*reply.file), "audio/wav");
    return;
  }
  res.set_content(reply.body.dump(), "application/json");
}

Query QueryOf(const httplib::Request& req) {
  Query q;
  for (const auto& [k, v] : req.params) q[k] = v;
  return q;
}

}  // namespace

struct GatewayServer::Impl {
  httplib::Server server;
};

GatewayServer::GatewayServer(Gateway& gateway)
    : gateway_(gateway), impl_(std::make_unique<Impl>()) {
  auto& s = impl_->server;
  Gateway& g = gateway_;
  s.set_payload_max_length(kMaxPayload);

  s.Post("/questionnaires", [&g](const httplib::Request& req, httplib::Response& res) {
    Send(g.CreateQuestionnaire(req.body, req.get_header_value("Content-Type"), QueryOf(req)),
         res);
  });
  s.Post("/questionnaires/import", [&g](const httplib::Request& req, httplib::Response& res) {
    Send(g.ImportDocument(req.body), res);
  });
  s.Get("/questionnaires", [&g](const httplib::Request&, httplib::Response& res) {
    Send(g.ListQuestionnaires(), res);
  });
  s.Get(R"(/questionnaires/([^/]+))", [&g](const httplib::Request& req, httplib::Response& res) {
    Send(g.GetQuestionnaire(req.matches[1]), res);
  });

  s.Post("/sessions", [&g](const httplib::Request& req, httplib::Response& res) {
    if (!req.is_multipart_form_data()) {
      Send({400,
            {{"error", "InvalidArgument"}, {"message", "expected multipart/form-data"}},
            std::nullopt},
           res);
      return;
    }
    std::vector<Upload> parts;
    for (const auto& [name, part] : req.files) parts.push_back({name, part.content});
    Send(g.SubmitSession(parts), res);
  });
  s.Get("/sessions", [&g](const httplib::Request& req, httplib::Response& res) {
    Send(g.ListSessions(QueryOf(req)), res);
  });
  s.Get(R"(/sessions/([^/]+))", [&g](const httplib::Request& req, httplib::Response& res) {
    Send(g.GetSession(req.matches[1]), res);
  });
  s.Get(R"(/sessions/([^/]+)/results)", [&g](const httplib::Request& req, httplib::Response& res) {
    Send(g.GetResults(req.matches[1]), res);
  });
  s.Post(R"(/sessions/([^/]+)/advice)", [&g](const httplib::Request& req, httplib::Response& res) {
    Send(g.AttachAdvice(req.matches[1], req.body), res);
  });
  s.Get(R"(/sessions/([^/]+)/audio/([^/]+))",
        [&g](const httplib::Request& req, httplib::Response& res) {
          Send(g.GetAudio(req.matches[1], req.matches[2]), res);
        });

  s.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    const std::string name = res.status == 404 ? "NotFound" : "InvalidArgument";
    res.set_content(
        nlohmann::json{{"error", name}, {"message", "no route for " + req.method + " " + req.path}}
            .dump(),
        "application/json");
  });
  s.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "unknown error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          what = e.what();
        } catch (...) {
        }
        res.status = 500;
        res.set_content(nlohmann::json{{"error", "Internal"}, {"message", what}}.dump(),
                        "application/json");
      });
}

GatewayServer::~GatewayServer() { Stop(); }

int GatewayServer::Bind(const std::string& host, int port) {
  host_ = host;
  port_ = port == 0 ? impl_->server.bind_to_any_port(host)
                    : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (port_ < 0) {
    throw Error(ErrorCode::kInvalidArgument, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port_;
}

int GatewayServer::Start(const std::string& host, int port) {
  Bind(host, port);
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port_;
}

void GatewayServer::Listen(const std::string& host, int port,
                           const std::function<void(int)>& on_bound) {
  Bind(host, port);
  if (on_bound) on_bound(port_);
  impl_->server.listen_after_bind();
}

void GatewayServer::Stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

std::string GatewayServer::base_url() const {
  return "http://" + host_ + ":" + std::to_string(port_);
}

}  // namespace voicecare::gateway
