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

#include "catsim/cli/scenario.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#include "catsim/errors.hpp"
#include "reader.hpp"

#ifndef CATSIM_VERSION
#define CATSIM_VERSION "0.0.0"
#endif
#ifndef CATSIM_SCENARIO_DIR
#define CATSIM_SCENARIO_DIR "scenarios"
#endif

namespace catsim::cli {

namespace {

constexpr std::array<std::pair<Kind, const char*>, 8> kKinds{{
    {Kind::stabilize, "stabilize"},
    {Kind::tomography, "tomography"},
    {Kind::gate_x_sweep, "gate_x_sweep"},
    {Kind::gate_y, "gate_y"},
    {Kind::gate_z, "gate_z"},
    {Kind::optimize_pulse, "optimize_pulse"},
    {Kind::squeeze_sweep, "squeeze_sweep"},
    {Kind::reconstruct, "reconstruct"},
}};

std::pair<int, int> line_and_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t k = 0; k < std::min(byte, text.size()); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

std::string to_string(Kind kind) {
  for (const auto& [k, name] : kKinds) {
    if (k == kind) return name;
  }
  return "unknown";
}

Kind kind_from_string(const std::string& s) {
  for (const auto& [k, name] : kKinds) {
    if (s == name) return k;
  }
  std::string known;
  for (const auto& entry : kKinds) known += std::string(known.empty() ? "" : ", ") + entry.second;
  throw SchemaError("kind: unknown kind '" + s + "' (expected one of " + known + ")");
}

Scenario parse_scenario(const nlohmann::json& doc,
                        const std::filesystem::path& base_dir) {
  const Reader r(doc, "");
  Scenario s;
  s.kind = kind_from_string(r.string("kind"));
  s.name = r.string("name");
  if (s.name.empty() ||
      s.name.find_first_of("/\\ ") != std::string::npos) {
    r.fail("name", "must be non-empty without spaces or path separators");
  }
  s.description = r.string("description", "");
  if (r.has("params")) {
    const nlohmann::json& p = doc.at("params");
    if (!p.is_object()) r.fail("params", "expected an object");
    try {
      s.params = device_params_from_json(p);
    } catch (const SchemaError& e) {
      throw SchemaError(std::string("params: ") + e.what());
    }
  }
  if (r.has("seed")) {
    const nlohmann::json& v = doc.at("seed");
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      r.fail("seed", "expected a non-negative integer");
    }
    s.seed = v.get<std::uint64_t>();
  }
  if (r.has("settings")) {
    if (!doc.at("settings").is_object()) r.fail("settings", "expected an object");
    s.settings = doc.at("settings");
  }
  r.has("$schema");
  r.finish();
  s.document = doc;
  s.base_dir = base_dir;
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path.string() + ": cannot open scenario file");
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw SchemaError(path.string() + ":" + std::to_string(line) + ":" +
                      std::to_string(col) + ": invalid JSON: " + e.what());
  }
  try {
    return parse_scenario(doc, path.parent_path());
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

std::string scenario_hash(const Scenario& s) {
  const std::string text = s.document.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json metadata(const Scenario& s) {
  return {{"toolkit", "catsim"},
          {"version", CATSIM_VERSION},
          {"scenario", s.name},
          {"kind", to_string(s.kind)},
          {"scenario_hash", scenario_hash(s)},
          {"seed", s.seed},
          {"params", to_json(s.params)}};
}

std::filesystem::path bundled_scenario_dir() {
  if (const char* env = std::getenv("CATSIM_SCENARIO_DIR")) return env;
  return CATSIM_SCENARIO_DIR;
}

std::vector<std::filesystem::path> list_bundled() {
  std::vector<std::filesystem::path> out;
  const auto dir = bundled_scenario_dir();
  if (!std::filesystem::is_directory(dir)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::filesystem::path resolve_scenario(const std::string& name_or_path) {
  const std::filesystem::path direct(name_or_path);
  if (std::filesystem::exists(direct)) return direct;
  const auto dir = bundled_scenario_dir();
  for (const auto& candidate : {dir / name_or_path, dir / (name_or_path + ".json")}) {
    if (std::filesystem::is_regular_file(candidate)) return candidate;
  }
  return direct;
}

int exit_code(const std::exception& e) {
  if (dynamic_cast<const SchemaError*>(&e) != nullptr) return 2;
  if (dynamic_cast<const DivergenceError*>(&e) != nullptr ||
      dynamic_cast<const StepSizeError*>(&e) != nullptr) {
    return 3;
  }
  if (dynamic_cast<const TruncationError*>(&e) != nullptr) return 4;
  return 1;
}

nlohmann::json error_report(const std::exception& e) {
  const int code = exit_code(e);
  const char* type = code == 2   ? "schema"
                     : code == 3 ? "divergence"
                     : code == 4 ? "truncation"
                                 : "error";
  nlohmann::json j = {{"status", "error"}, {"code", code}, {"type", type},
                      {"message", e.what()}};
  if (const auto* t = dynamic_cast<const TruncationError*>(&e)) {
    j["required_dim"] = t->required_dim();
  }
  return j;
}

}  // namespace catsim::cli
