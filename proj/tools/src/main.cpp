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

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "catsim/cli/scenario.hpp"
#include "catsim/errors.hpp"

namespace {

using catsim::cli::Overrides;

std::optional<catsim::BipartiteDims> parse_dims(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto comma = text.find(',');
  try {
    catsim::BipartiteDims d;
    d.memory = std::stoi(text.substr(0, comma));
    if (comma != std::string::npos) d.buffer = std::stoi(text.substr(comma + 1));
    return d;
  } catch (const std::exception&) {
    throw catsim::SchemaError("--dims: expected m or m,b");
  }
}

int fail(const std::exception& e) {
  std::cerr << catsim::cli::error_report(e).dump() << '\n';
  return catsim::cli::exit_code(e);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"catsim: two-photon dissipation and cat-qubit simulations"};
  app.require_subcommand(1);

  std::string file;
  std::string out_dir = ".";
  std::string dims_text;
  int threads = 1;

  CLI::App* run = app.add_subcommand("run", "Run a scenario file or bundled name");
  run->add_option("scenario", file, "Scenario JSON path or bundled name")->required();
  run->add_option("--out-dir", out_dir, "Directory for outputs");
  run->add_option("--threads", threads, "Parallel cells")->check(CLI::PositiveNumber);
  run->add_option("--dims", dims_text, "Override dimensions: memory[,buffer]");

  CLI::App* validate = app.add_subcommand("validate", "Check a scenario without running it");
  validate->add_option("scenario", file, "Scenario JSON path or bundled name")->required();
  validate->add_option("--dims", dims_text, "Override dimensions: memory[,buffer]");

  CLI::App* list = app.add_subcommand("list", "List bundled scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*list) {
      for (const auto& path : catsim::cli::list_bundled()) {
        try {
          const auto s = catsim::cli::load_scenario(path);
          std::cout << s.name << '\t' << catsim::cli::to_string(s.kind) << '\t'
                    << s.description << '\n';
        } catch (const catsim::Error& e) {
          std::cout << path.filename().string() << "\tinvalid\t" << e.what() << '\n';
        }
      }
      return 0;
    }

    Overrides overrides;
    overrides.dims = parse_dims(dims_text);
    overrides.threads = threads;
    const auto path = catsim::cli::resolve_scenario(file);
    const auto scenario = catsim::cli::load_scenario(path);

    if (*validate) {
      catsim::cli::validate_scenario(scenario, overrides);
      std::cout << nlohmann::json{{"status", "ok"},
                                  {"scenario", scenario.name},
                                  {"kind", catsim::cli::to_string(scenario.kind)},
                                  {"scenario_hash", catsim::cli::scenario_hash(scenario)}}
                       .dump()
                << '\n';
      return 0;
    }

    const auto result = catsim::cli::run_scenario(scenario, out_dir, overrides);
    nlohmann::json files = nlohmann::json::array();
    for (const auto& f : result.files) files.push_back(f.string());
    std::cout << nlohmann::json{{"status", "ok"}, {"scenario", scenario.name}, {"files", files}}
                     .dump()
              << '\n';
    return 0;
  } catch (const std::exception& e) {
    return fail(e);
  }
}
