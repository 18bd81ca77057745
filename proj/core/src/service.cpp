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

#include "aiuflow/service.hpp"

#include <random>

#include "aiuflow/adapt.hpp"
#include "aiuflow/errors.hpp"
#include "aiuflow/spec_io.hpp"
#include "aiuflow/validate.hpp"
#include "httplib.h"
#include "json_codec.hpp"

namespace aiuflow {

using codec::json;

namespace {

constexpr std::string_view kSpecSuffix = ".aiu.json";
constexpr std::string_view kDeviceSuffix = ".device.json";

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

ApiResponse reply(int status, const json& body) { return {status, body.dump(2) + "\n"}; }

ApiResponse error_reply(const std::string& code, const std::string& message) {
  return reply(http_status_for(code), json{{"code", code}, {"message", message}});
}

json views_to_json(const std::vector<View>& views) {
  json out = json::array();
  for (const auto& v : views) {
    json pages = json::array();
    for (const auto& p : v.pages) pages.push_back(codec::page_to_json(p));
    out.push_back({{"nodes", v.nodes}, {"pages", std::move(pages)}});
  }
  return out;
}

json state_reply(const Session& s) {
  json out = json::object();
  out["sessionId"] = s.id;
  if (s.status == SessionStatus::Finished) {
    out["finished"] = true;
  } else {
    out["pages"] = views_to_json(current_views(s));
  }
  return out;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (begin < path.size()) {
    auto end = path.find('/', begin);
    if (end == std::string::npos) end = path.size();
    if (end > begin) parts.push_back(path.substr(begin, end - begin));
    begin = end + 1;
  }
  return parts;
}

const std::string& query_param(const ApiRequest& r, const std::string& key) {
  auto it = r.query.find(key);
  if (it == r.query.end() || it->second.empty()) {
    throw Error("BadRequest", "missing query parameter '" + key + "'");
  }
  return it->second;
}

int to_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    long v = std::stol(text, &used);
    if (used != text.size() || v < 0 || v > 1'000'000'000) throw std::out_of_range(what);
    return static_cast<int>(v);
  } catch (const std::logic_error&) {
    throw Error("BadRequest", what + " must be a non-negative integer");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

void Registry::add_spec(const std::string& name, ServiceSpec spec) {
  auto diagnostics = validate_spec(spec);
  if (!diagnostics.empty()) {
    throw Error("ValidationFailed", name + ": " + format_diagnostic(diagnostics.front()));
  }
  specs_[name] = std::make_shared<const ServiceSpec>(std::move(spec));
}

void Registry::add_device(DeviceProfile device) {
  std::string id = device.id;
  devices_[id] = std::move(device);
}

Registry Registry::load(const std::filesystem::path& specs, const std::filesystem::path& devices) {
  Registry r;
  auto files = [](const std::filesystem::path& dir, std::string_view suffix) {
    std::vector<std::filesystem::path> out;
    if (!std::filesystem::is_directory(dir)) {
      throw Error("IoError", dir.string() + " is not a directory");
    }
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.is_regular_file() && ends_with(entry.path().filename().string(), suffix)) {
        out.push_back(entry.path());
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  for (const auto& path : files(specs, kSpecSuffix)) {
    auto name = path.filename().string();
    name.resize(name.size() - kSpecSuffix.size());
    r.add_spec(name, load_spec_file(path));
  }
  for (const auto& path : files(devices, kDeviceSuffix)) r.add_device(load_device_file(path));
  return r;
}

std::shared_ptr<const ServiceSpec> Registry::spec(const std::string& name) const {
  auto it = specs_.find(name);
  return it == specs_.end() ? nullptr : it->second;
}

const DeviceProfile* Registry::device(const std::string& id) const {
  auto it = devices_.find(id);
  return it == devices_.end() ? nullptr : &it->second;
}

std::vector<std::string> Registry::spec_names() const {
  std::vector<std::string> out;
  for (const auto& [name, spec] : specs_) out.push_back(name);
  return out;
}

// ---------------------------------------------------------------------------
// ApiService
// ---------------------------------------------------------------------------

int http_status_for(const std::string& code) {
  static const std::map<std::string, int> table = {
      {"UnknownSession", 404},     {"UnknownSpec", 404},        {"UnknownDevice", 404},
      {"NotFound", 404},           {"MethodNotAllowed", 405},   {"SessionFinished", 409},
      {"NotActive", 409},          {"IllegalOutcome", 422},     {"FieldValidationError", 422},
      {"RowOutOfRange", 422},      {"PageOutOfRange", 422},     {"NoMatchingTransition", 422},
      {"ValidationFailed", 422},   {"PlanError", 422},          {"LayoutError", 422},
      {"GuardEvaluationError", 422}, {"BadRequest", 400},       {"SyntaxError", 400},
      {"InvalidShape", 400},
  };
  auto it = table.find(code);
  return it == table.end() ? 500 : it->second;
}

struct ApiService::Slot {
  std::mutex mutex;  // serializes work on this session
  Session session;
  std::chrono::steady_clock::time_point last_used;
};

ApiService::ApiService(Registry registry, ServiceOptions options)
    : registry_(std::move(registry)), options_(std::move(options)) {}

ApiService::~ApiService() = default;

std::string ApiService::next_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  char buf[32];
  std::snprintf(buf, sizeof buf, "s%llu-%08llx", ++counter_,
                static_cast<unsigned long long>(rng() & 0xffffffffULL));
  return buf;
}

std::shared_ptr<ApiService::Slot> ApiService::find(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = slots_.find(id);
  if (it == slots_.end()) throw Error("UnknownSession", "no session '" + id + "'");
  return it->second;
}

std::size_t ApiService::evict_expired() {
  auto now = options_.clock();
  std::lock_guard lock(mutex_);
  std::size_t dropped = 0;
  for (auto it = slots_.begin(); it != slots_.end();) {
    std::unique_lock slot_lock(it->second->mutex, std::try_to_lock);
    if (slot_lock.owns_lock() && now - it->second->last_used > options_.session_ttl) {
      slot_lock.unlock();
      it = slots_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

std::size_t ApiService::session_count() const {
  std::lock_guard lock(mutex_);
  return slots_.size();
}

ApiResponse ApiService::list_specs() const { return reply(200, registry_.spec_names()); }

ApiResponse ApiService::list_devices() const {
  json out = json::array();
  for (const auto& [id, d] : registry_.devices()) out.push_back(codec::device_to_json(d));
  return reply(200, out);
}

ApiResponse ApiService::get_plan(const ApiRequest& request) const {
  auto spec = registry_.spec(query_param(request, "spec"));
  if (!spec) throw Error("UnknownSpec", "no spec '" + request.query.at("spec") + "'");
  const DeviceProfile* device = registry_.device(query_param(request, "device"));
  if (!device) throw Error("UnknownDevice", "no device '" + request.query.at("device") + "'");
  return reply(200, codec::plan_to_json(plan_service(*spec, *device, options_.thresholds)));
}

ApiResponse ApiService::create_session(const ApiRequest& request) {
  json body = codec::parse_document(request.body);
  codec::ObjectReader r(body, "");
  r.only_keys({"spec", "device"});
  auto spec_name = r.string("spec");
  auto device_id = r.string("device");
  auto spec = registry_.spec(spec_name);
  if (!spec) throw Error("UnknownSpec", "no spec '" + spec_name + "'");
  const DeviceProfile* device = registry_.device(device_id);
  if (!device) throw Error("UnknownDevice", "no device '" + device_id + "'");

  std::string id;
  {
    std::lock_guard lock(mutex_);
    id = next_id();
  }
  auto slot = std::make_shared<Slot>();
  slot->session = start_session(spec, *device, options_.thresholds, id);
  slot->last_used = options_.clock();
  json out = state_reply(slot->session);
  {
    std::lock_guard lock(mutex_);
    slots_[id] = std::move(slot);
  }
  return reply(201, out);
}

ApiResponse ApiService::session_route(const ApiRequest& request, const std::string& id,
                                      const std::string& action) {
  auto slot = find(id);
  std::lock_guard lock(slot->mutex);
  slot->last_used = options_.clock();
  Session& s = slot->session;

  if (action.empty() && request.method == "GET") {
    return reply(200, codec::session_to_json(s));
  }
  if (action == "pages" && request.method == "GET") {
    if (s.status == SessionStatus::Finished) {
      throw Error("SessionFinished", "session " + id + " has finished");
    }
    return reply(200, state_reply(s));
  }
  if (action == "outcome" && request.method == "POST") {
    json body = codec::parse_document(request.body);
    codec::ObjectReader r(body, "");
    r.only_keys({"node", "outcome"});
    auto node = r.string("node");
    Outcome o = codec::outcome_from_json(r.at("outcome"), r.child_path("outcome"));
    s = submit(s, node, o);
    return reply(200, state_reply(s));
  }
  if (action == "detail" && request.method == "GET") {
    const auto& node = query_param(request, "node");
    int row = to_int(query_param(request, "row"), "row");
    int page = request.query.count("page") ? to_int(request.query.at("page"), "page") : 1;
    return reply(200, codec::page_to_json(session_detail(s, node, row, page)));
  }
  throw Error("NotFound", request.method + " " + request.path);
}

ApiResponse ApiService::handle(const ApiRequest& request) {
  try {
    evict_expired();
    auto parts = split_path(request.path);
    const auto& m = request.method;
    if (parts.size() == 1 && parts[0] == "specs" && m == "GET") return list_specs();
    if (parts.size() == 1 && parts[0] == "devices" && m == "GET") return list_devices();
    if (parts.size() == 1 && parts[0] == "plan" && m == "GET") return get_plan(request);
    if (parts.size() == 1 && parts[0] == "sessions" && m == "POST") return create_session(request);
    if (parts.size() == 2 && parts[0] == "sessions") return session_route(request, parts[1], "");
    if (parts.size() == 3 && parts[0] == "sessions") {
      return session_route(request, parts[1], parts[2]);
    }
    if (parts.size() == 1 &&
        (parts[0] == "specs" || parts[0] == "devices" || parts[0] == "plan" || parts[0] == "sessions")) {
      throw Error("MethodNotAllowed", m + " " + request.path);
    }
    throw Error("NotFound", m + " " + request.path);
  } catch (const Error& e) {
    return error_reply(e.code(), e.what());
  } catch (const std::exception& e) {
    return error_reply("InternalError", e.what());
  }
}

// ---------------------------------------------------------------------------
// HttpServer
// ---------------------------------------------------------------------------

struct HttpServer::Impl {
  explicit Impl(ApiService& a) : api(a) {}

  ApiService& api;
  httplib::Server server;
};

HttpServer::HttpServer(ApiService& api) : impl_(std::make_unique<Impl>(api)) {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    ApiRequest request;
    request.method = req.method;
    request.path = req.path;
    request.body = req.body;
    for (const auto& [key, value] : req.params) request.query[key] = value;
    ApiResponse response = impl_->api.handle(request);
    res.status = response.status;
    res.set_content(response.body, "application/json");
  };
  auto& s = impl_->server;
  s.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                         {"Access-Control-Allow-Headers", "Content-Type"},
                         {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  s.Get(R"(/.*)", forward);
  s.Post(R"(/.*)", forward);
  s.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace aiuflow
