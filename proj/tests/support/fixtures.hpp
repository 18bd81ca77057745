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

#include <filesystem>
#include <memory>
#include <string>

#include "aiuflow/metrics.hpp"
#include "aiuflow/model.hpp"
#include "aiuflow/spec_io.hpp"

namespace fixtures {

inline std::filesystem::path data_path(const std::string& relative) {
  return std::filesystem::path(AIUFLOW_TEST_DATA_DIR) / relative;
}

inline aiuflow::ServiceSpec spec(const std::string& name) {
  return aiuflow::load_spec_file(data_path("specs/" + name + ".aiu.json"));
}

inline std::shared_ptr<const aiuflow::ServiceSpec> shared_spec(const std::string& name) {
  return std::make_shared<const aiuflow::ServiceSpec>(spec(name));
}

inline aiuflow::ServiceSpec hotel() { return spec("hotel"); }

inline aiuflow::DeviceProfile device(const std::string& name) {
  return aiuflow::load_device_file(data_path("devices/" + name + ".device.json"));
}

inline aiuflow::DeviceProfile handheld() { return device("paper-handheld"); }
inline aiuflow::DeviceProfile desktop() { return device("desktop-browser"); }
inline aiuflow::DeviceProfile tiny() { return device("tiny-phone"); }

inline const aiuflow::Node& node(const aiuflow::ServiceSpec& s, const std::string& id) {
  const aiuflow::Node* n = s.find_node(id);
  if (n == nullptr) throw std::runtime_error("fixture has no node " + id);
  return *n;
}

inline const aiuflow::AiuInstance& aiu(const aiuflow::ServiceSpec& s, const std::string& id) {
  return *node(s, id).aiu;
}

}  // namespace fixtures
