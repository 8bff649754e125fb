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

#ifndef HKDRISK_SERVICE_SERVER_H_
#define HKDRISK_SERVICE_SERVER_H_

#include <filesystem>
#include <memory>
#include <mutex>
#include <string>

#include "hkdrisk/common/json_util.h"
#include "hkdrisk/models/bundle.h"

namespace hkdrisk {

struct ServiceReply {
  int status = 200;
  Json body;
};

// Routes requests to the handlers against an immutable bundle snapshot.
// Each request takes the current snapshot once, so a concurrent Reload never
// changes the bundle under a request in flight.
//
//   GET /schema, GET /model, GET /health
//   POST /predict, POST /explain, POST /posterior, POST /reload
class PredictionService {
 public:
  explicit PredictionService(const std::filesystem::path& bundle_path);
  explicit PredictionService(ModelBundle bundle);

  ServiceReply Handle(const std::string& method, const std::string& path, const std::string& body);

  // Re-reads the bundle file and swaps it in; on failure the old snapshot
  // stays and the error propagates. Returns the new hash.
  std::string Reload();
  std::shared_ptr<const ModelBundle> snapshot() const;

 private:
  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::shared_ptr<const ModelBundle> bundle_;
};

// Blocking HTTP front end over a PredictionService (JSON bodies, permissive
// CORS for browser clients).
class HttpServer {
 public:
  explicit HttpServer(PredictionService& service);
  ~HttpServer();

  // Binds `host`; port 0 picks a free port. Returns the bound port.
  int Bind(const std::string& host, int port);
  // Serves until Stop(); call after Bind.
  void Run();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hkdrisk

#endif  // HKDRISK_SERVICE_SERVER_H_
