// Copyright 2026 The aiuflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "aiuflow/engine.hpp"
#include "aiuflow/metrics.hpp"
#include "aiuflow/model.hpp"

namespace aiuflow {

/// Specs and device profiles served by name. Read-only once built.
class Registry {
 public:
  /// Keyed by file name without the ".aiu.json" suffix. Throws
  /// Error{"ValidationFailed"} for a spec that does not validate clean.
  void add_spec(const std::string& name, ServiceSpec spec);
  void add_device(DeviceProfile device);

  /// Loads every `*.aiu.json` in `specs` and `*.device.json` in `devices`
  /// (not recursive).
  static Registry load(const std::filesystem::path& specs, const std::filesystem::path& devices);

  std::shared_ptr<const ServiceSpec> spec(const std::string& name) const;
  const DeviceProfile* device(const std::string& id) const;
  std::vector<std::string> spec_names() const;
  const std::map<std::string, DeviceProfile>& devices() const { return devices_; }

 private:
  std::map<std::string, std::shared_ptr<const ServiceSpec>> specs_;
  std::map<std::string, DeviceProfile> devices_;
};

struct ServiceOptions {
  Thresholds thresholds;
  std::chrono::seconds session_ttl{30 * 60};
  std::function<std::chrono::steady_clock::time_point()> clock = std::chrono::steady_clock::now;
};

struct ApiRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string body;  // always a JSON document
};

/// HTTP status for an error code: 404 unknown ids, 409 state conflicts,
/// 422 rejected outcomes and requests, 400 malformed bodies, else 500.
int http_status_for(const std::string& code);

/// The HTTP API without the transport, so tests can drive it directly.
/// Thread-safe: submissions to one session are serialized, distinct
/// sessions proceed in parallel.
class ApiService {
 public:
  ApiService(Registry registry, ServiceOptions options = {});
  ~ApiService();

  ApiResponse handle(const ApiRequest& request);

  /// Drops sessions idle for longer than the TTL; returns how many.
  std::size_t evict_expired();
  std::size_t session_count() const;

 private:
  struct Slot;

  ApiResponse create_session(const ApiRequest& request);
  ApiResponse list_specs() const;
  ApiResponse list_devices() const;
  ApiResponse get_plan(const ApiRequest& request) const;
  ApiResponse session_route(const ApiRequest& request, const std::string& id,
                            const std::string& action);
  std::shared_ptr<Slot> find(const std::string& id);
  std::string next_id();

  Registry registry_;
  ServiceOptions options_;
  mutable std::mutex mutex_;  // guards slots_ and the id counter
  std::map<std::string, std::shared_ptr<Slot>> slots_;
  unsigned long long counter_ = 0;
};

/// Serves `api` over HTTP until stop() is called from another thread.
class HttpServer {
 public:
  explicit HttpServer(ApiService& api);
  ~HttpServer();

  /// Binds; port 0 picks a free port. Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Blocks serving requests.
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace aiuflow
