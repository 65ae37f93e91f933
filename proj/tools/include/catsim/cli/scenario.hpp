// Copyright 2026 The catsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Scenario files: a JSON document naming one experiment kind, a partial
// parameter table and kind-specific settings. Loading checks the schema;
// running writes CSV/JSON outputs that all carry the same metadata block.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "catsim/device.hpp"

namespace catsim::cli {

enum class Kind {
  stabilize,
  tomography,
  gate_x_sweep,
  gate_y,
  gate_z,
  optimize_pulse,
  squeeze_sweep,
  reconstruct,
};

std::string to_string(Kind kind);
Kind kind_from_string(const std::string& s);  // SchemaError if unknown

struct Scenario {
  Kind kind = Kind::stabilize;
  std::string name;
  std::string description;
  DeviceParams params;
  std::uint64_t seed = 0;
  nlohmann::json settings = nlohmann::json::object();
  nlohmann::json document;         // as loaded, used for the hash
  std::filesystem::path base_dir;  // relative input paths resolve here
};

struct Overrides {
  std::optional<BipartiteDims> dims;  // memory-only kinds use dims->memory
  int threads = 1;
};

Scenario parse_scenario(const nlohmann::json& doc,
                        const std::filesystem::path& base_dir = {});
// Parse errors carry line and column; schema errors name the field.
Scenario load_scenario(const std::filesystem::path& path);

// Settings and truncation checks without running anything.
void validate_scenario(const Scenario& s, const Overrides& overrides = {});

struct RunResult {
  std::vector<std::filesystem::path> files;
  nlohmann::json summary;
};

RunResult run_scenario(const Scenario& s, const std::filesystem::path& out_dir,
                       const Overrides& overrides = {});

// FNV-1a 64 of the compact dump of the loaded document, as 16 hex digits.
std::string scenario_hash(const Scenario& s);
nlohmann::json metadata(const Scenario& s);

std::filesystem::path bundled_scenario_dir();
std::vector<std::filesystem::path> list_bundled();
// A path that exists is returned as is; otherwise the bundled directory is
// searched for `name` and `name.json`.
std::filesystem::path resolve_scenario(const std::string& name_or_path);

// 2 schema, 3 solver divergence or step failure, 4 truncation, 1 otherwise.
int exit_code(const std::exception& e);
nlohmann::json error_report(const std::exception& e);

}  // namespace catsim::cli
