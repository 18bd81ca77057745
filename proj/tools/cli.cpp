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

#include "cli.hpp"

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "aiuflow/adapt.hpp"
#include "aiuflow/engine.hpp"
#include "aiuflow/errors.hpp"
#include "aiuflow/render.hpp"
#include "aiuflow/service.hpp"
#include "aiuflow/spec_io.hpp"
#include "aiuflow/validate.hpp"

namespace aiuflow::cli {
namespace {

namespace fs = std::filesystem;

fs::path data_dir() {
  if (const char* env = std::getenv("AIUFLOW_DATA_DIR"); env && *env) return env;
  return AIUFLOW_DATA_DIR;
}

// A path if it exists, else a bundled name.
fs::path resolve(const std::string& arg, const char* subdir, const char* suffix) {
  if (fs::exists(arg)) return arg;
  fs::path bundled = data_dir() / subdir / (arg + suffix);
  if (fs::exists(bundled)) return bundled;
  throw Error("IoError", "no file or bundled entry named '" + arg + "'");
}

ServiceSpec load_spec(const std::string& arg) {
  return load_spec_file(resolve(arg, "specs", ".aiu.json"));
}

DeviceProfile load_device(const std::string& arg) {
  return load_device_file(resolve(arg, "devices", ".device.json"));
}

Thresholds load_thresholds(const std::string& arg) {
  if (arg.empty()) return default_thresholds();
  return load_thresholds_file(resolve(arg, "thresholds", ".thresholds.json"));
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!(file << text)) throw Error("IoError", "cannot write " + path);
}

int cmd_validate(const std::string& spec_arg, std::ostream& out) {
  auto source = read_text_file(resolve(spec_arg, "specs", ".aiu.json"));
  auto diagnostics = diagnose_source(source);
  for (const auto& d : diagnostics) out << format_diagnostic(d) << "\n";
  if (diagnostics.empty()) out << "ok\n";
  return diagnostics.empty() ? 0 : 1;
}

const Node& activity(const ServiceSpec& spec, const std::string& id) {
  const Node* node = spec.find_node(id);
  if (node == nullptr || !node->aiu) throw Error("NotFound", "no activity node '" + id + "'");
  return *node;
}

void print_views(const Session& s, std::ostream& out) {
  for (const auto& view : current_views(s)) {
    out << "== ";
    for (std::size_t i = 0; i < view.nodes.size(); ++i) out << (i ? " + " : "") << view.nodes[i];
    out << "\n" << emit_text(view.pages.front());
  }
}

int cmd_run(const std::string& spec_arg, const std::string& device_arg,
            const std::string& thresholds_arg, std::istream& in, std::ostream& out,
            std::ostream& err) {
  auto spec = std::make_shared<const ServiceSpec>(load_spec(spec_arg));
  Session s = start_session(spec, load_device(device_arg), load_thresholds(thresholds_arg));
  out << "Submit with: <node> <outcome json>, e.g. Select_City {\"tag\":\"choiceSelected\","
         "\"key\":\"rome\"}\nAlso: page <node> <n>, detail <node> <row>, state, exit\n";
  print_views(s, out);
  std::string line;
  while (s.status == SessionStatus::Running && std::getline(in, line)) {
    std::istringstream words(line);
    std::string head;
    if (!(words >> head)) continue;
    try {
      if (head == "exit") break;
      if (head == "state") {
        out << serialize_session(s);
      } else if (head == "page") {
        std::string node;
        int page = 1;
        words >> node >> page;
        for (const auto& view : current_views(s)) {
          if (view.nodes.front() != node) continue;
          if (page < 1 || page > static_cast<int>(view.pages.size())) {
            throw Error("PageOutOfRange", "no page " + std::to_string(page));
          }
          out << emit_text(view.pages[page - 1]);
        }
      } else if (head == "detail") {
        std::string node;
        std::size_t row = 0;
        int page = 1;
        words >> node >> row;
        if (!(words >> page)) page = 1;
        out << emit_text(session_detail(s, node, row, page));
      } else {
        std::string rest;
        std::getline(words, rest);
        s = submit(s, head, parse_outcome(rest));
        if (s.status == SessionStatus::Running) print_views(s, out);
      }
    } catch (const Error& e) {
      err << e.code() << ": " << e.what() << "\n";
    }
  }
  if (s.status == SessionStatus::Finished) out << "finished\n";
  return 0;
}

HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

int cmd_serve(std::string host, int port, const std::string& specs, const std::string& devices,
              const std::string& thresholds_arg, std::ostream& out) {
  if (const char* env = std::getenv("AIUFLOW_PORT"); env && *env) port = std::atoi(env);
  ServiceOptions options;
  options.thresholds = load_thresholds(thresholds_arg);
  ApiService api(Registry::load(specs.empty() ? data_dir() / "specs" : fs::path(specs),
                                devices.empty() ? data_dir() / "devices" : fs::path(devices)),
                 options);
  HttpServer server(api);
  int bound = server.bind(host, port);
  if (bound < 0) throw Error("IoError", "cannot bind " + host + ":" + std::to_string(port));
  out << "listening on http://" << host << ":" << bound << std::endl;
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.listen();
  g_server = nullptr;
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"aiuflow: device-adaptive services built from atomic interaction units"};
  app.name("aiuflow");
  app.require_subcommand(1);

  std::string spec_arg, device_arg, thresholds_arg, out_arg, node_arg, format = "text";
  int page = 1;
  long detail_row = -1;

  auto* validate = app.add_subcommand("validate", "Check a spec and print diagnostics");
  validate->add_option("spec", spec_arg, "Spec file or bundled name")->required();

  auto* plan = app.add_subcommand("plan", "Print the adaptation plan for a device");
  plan->add_option("--spec", spec_arg, "Spec file or bundled name")->required();
  plan->add_option("--device", device_arg, "Device file or bundled name")->required();
  plan->add_option("--thresholds", thresholds_arg, "Thresholds file or bundled name");
  plan->add_option("--out", out_arg, "Write to this file instead of stdout");

  auto* render = app.add_subcommand("render", "Render one page of an activity");
  render->add_option("--spec", spec_arg, "Spec file or bundled name")->required();
  render->add_option("--device", device_arg, "Device file or bundled name")->required();
  render->add_option("--node", node_arg, "Activity node id")->required();
  render->add_option("--page", page, "Page number")->check(CLI::PositiveNumber);
  render->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "html", "json"}));
  render->add_option("--thresholds", thresholds_arg, "Thresholds file or bundled name");
  render->add_option("--detail", detail_row, "Render the detail page of this table row")
      ->check(CLI::NonNegativeNumber);

  auto* runner = app.add_subcommand("run", "Walk through a service interactively");
  runner->add_option("--spec", spec_arg, "Spec file or bundled name")->required();
  runner->add_option("--device", device_arg, "Device file or bundled name")->required();
  runner->add_option("--thresholds", thresholds_arg, "Thresholds file or bundled name");

  std::string host = "127.0.0.1", specs_dir, devices_dir;
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("--port", port, "Port (AIUFLOW_PORT overrides)");
  serve->add_option("--host", host, "Interface to bind");
  serve->add_option("--specs", specs_dir, "Directory of *.aiu.json specs");
  serve->add_option("--devices", devices_dir, "Directory of *.device.json profiles");
  serve->add_option("--thresholds", thresholds_arg, "Thresholds file or bundled name");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*validate) return cmd_validate(spec_arg, out);
    if (*plan) {
      auto spec = load_spec(spec_arg);
      write_output(
          serialize_plan(plan_service(spec, load_device(device_arg), load_thresholds(thresholds_arg))),
          out_arg, out);
      return 0;
    }
    if (*render) {
      auto spec = load_spec(spec_arg);
      auto device = load_device(device_arg);
      const Node& node = activity(spec, node_arg);
      ConcretePage p;
      if (detail_row >= 0) {
        p = render_detail(node, static_cast<std::size_t>(detail_row), device, page);
      } else {
        auto plan = plan_service(spec, device, load_thresholds(thresholds_arg));
        p = render_page(node, plan.per_node.at(node.id), device, page);
      }
      out << (format == "html" ? emit_html(p) : format == "json" ? serialize_page(p) : emit_text(p));
      return 0;
    }
    if (*runner) return cmd_run(spec_arg, device_arg, thresholds_arg, in, out, err);
    if (*serve) return cmd_serve(host, port, specs_dir, devices_dir, thresholds_arg, out);
  } catch (const Error& e) {
    err << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace aiuflow::cli
