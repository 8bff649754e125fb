/*
 * Copyright 2026 The hkdrisk Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hkdrisk/service/server.h"

#include "hkdrisk/common/error.h"
#include "hkdrisk/service/handlers.h"
#include "httplib.h"

namespace hkdrisk {

PredictionService::PredictionService(const std::filesystem::path& bundle_path)
    : path_(bundle_path), bundle_(std::make_shared<const ModelBundle>(ModelBundle::Load(bundle_path))) {}

PredictionService::PredictionService(ModelBundle bundle)
    : bundle_(std::make_shared<const ModelBundle>(std::move(bundle))) {}

std::shared_ptr<const ModelBundle> PredictionService::snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return bundle_;
}

std::string PredictionService::Reload() {
  if (path_.empty()) throw Error(ErrorCode::kNotFound, "service was not started from a bundle file");
  auto fresh = std::make_shared<const ModelBundle>(ModelBundle::Load(path_));
  std::lock_guard<std::mutex> lock(mu_);
  bundle_ = std::move(fresh);
  return bundle_->hash();
}

ServiceReply PredictionService::Handle(const std::string& method, const std::string& path,
                                       const std::string& body) {
  const std::shared_ptr<const ModelBundle> bundle = snapshot();
  try {
    if (method == "GET") {
      if (path == "/health") return {200, {{"status", "ok"}, {"bundle_hash", bundle->hash()}}};
      if (path == "/schema") return {200, HandleSchema(*bundle)};
      if (path == "/model") return {200, HandleModel(*bundle)};
    } else if (method == "POST") {
      if (path == "/reload") {
        const std::string hash = Reload();
        return {200, {{"status", "reloaded"}, {"bundle_hash", hash}}};
      }
      if (path == "/predict" || path == "/explain" || path == "/posterior") {
        Json request;
        try {
          request = body.empty() ? Json::object() : Json::parse(body);
        } catch (const Json::parse_error& e) {
          throw Error(ErrorCode::kParse, std::string("request body is not valid JSON: ") + e.what());
        }
        if (path == "/predict") return {200, HandlePredict(request, *bundle).ToJson()};
        if (path == "/explain") return {200, HandleExplain(request, *bundle)};
        return {200, HandlePosterior(request, *bundle)};
      }
    }
    const Error missing(ErrorCode::kNotFound, "no route " + method + " " + path);
    return {404, ErrorBody(missing, bundle->hash())};
  } catch (const Error& e) {
    return {HttpStatusFor(e.code()), ErrorBody(e, bundle->hash())};
  } catch (const Json::exception& e) {
    const Error wrapped(ErrorCode::kParse, std::string("malformed request: ") + e.what());
    return {400, ErrorBody(wrapped, bundle->hash())};
  } catch (const std::exception& e) {
    const Error wrapped(ErrorCode::kPipeline, e.what());
    return {500, ErrorBody(wrapped, bundle->hash())};
  }
}

struct HttpServer::Impl {
  PredictionService& service;
  httplib::Server server;
};

HttpServer::HttpServer(PredictionService& service) : impl_(new Impl{service, {}}) {
  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    const ServiceReply reply = impl_->service.Handle(req.method, req.path, req.body);
    res.status = reply.status;
    res.set_content(reply.body.dump(), "application/json");
  };
  httplib::Server& s = impl_->server;
  s.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                         {"Access-Control-Allow-Headers", "Content-Type"},
                         {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  s.Get(".*", route);
  s.Post(".*", route);
  s.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(ErrorCode::kInvalidArgument, "cannot bind " + host + ":" + std::to_string(port), "port");
  return bound;
}

void HttpServer::Run() { impl_->server.listen_after_bind(); }

void HttpServer::Stop() { impl_->server.stop(); }

}  // namespace hkdrisk
