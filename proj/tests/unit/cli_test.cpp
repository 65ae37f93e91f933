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

#ifdef CATSIM_HAVE_CLI

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include <gtest/gtest.h>

#include "catsim/cli/scenario.hpp"
#include "catsim/errors.hpp"

namespace catsim::cli {
namespace {

namespace fs = std::filesystem;

nlohmann::json quick_gate_z() {
  return nlohmann::json::parse(R"({
    "kind": "gate_z",
    "name": "quick_z",
    "seed": 3,
    "settings": {"alpha": 1.5, "epsilon_z": 0.002,
                 "durations_ns": {"start": 0, "stop": 40, "step": 20},
                 "memory_dim": 14, "dt_ns": 5}
  })");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("catsim_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(CATSIM_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Scenario, ParsesKindsAndDefaults) {
  const Scenario s = parse_scenario(quick_gate_z());
  EXPECT_EQ(s.kind, Kind::gate_z);
  EXPECT_EQ(s.name, "quick_z");
  EXPECT_EQ(s.seed, 3u);
  EXPECT_EQ(to_json(s.params), to_json(DeviceParams{}));
  for (auto k : {Kind::stabilize, Kind::tomography, Kind::squeeze_sweep}) {
    EXPECT_EQ(kind_from_string(to_string(k)), k);
  }
}

TEST(Scenario, SchemaErrorsNameTheField) {
  auto doc = quick_gate_z();
  doc["settigns"] = nlohmann::json::object();
  try {
    parse_scenario(doc);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("settigns"), std::string::npos);
  }
  doc = quick_gate_z();
  doc["settings"]["epsilon_z"] = "fast";
  EXPECT_THROW(validate_scenario(parse_scenario(doc)), SchemaError);
  doc = quick_gate_z();
  doc["settings"]["extra"] = 1;
  EXPECT_THROW(validate_scenario(parse_scenario(doc)), SchemaError);
  doc = quick_gate_z();
  doc["kind"] = "teleport";
  EXPECT_THROW(parse_scenario(doc), SchemaError);
  doc = quick_gate_z();
  doc["params"] = {{"g2_over_2pi_MHz", "x"}};
  EXPECT_THROW(parse_scenario(doc), SchemaError);
}

TEST(Scenario, TruncationIsReportedWithRequiredDim) {
  auto doc = quick_gate_z();
  doc["settings"]["alpha"] = 5.0;
  doc["settings"]["memory_dim"] = 20;
  try {
    validate_scenario(parse_scenario(doc));
    FAIL() << "expected TruncationError";
  } catch (const TruncationError& e) {
    EXPECT_EQ(e.required_dim(), 46);
    EXPECT_EQ(exit_code(e), 4);
    EXPECT_EQ(error_report(e)["required_dim"], 46);
  }
}

TEST(Scenario, ExitCodes) {
  EXPECT_EQ(exit_code(SchemaError("x")), 2);
  EXPECT_EQ(exit_code(DivergenceError("x")), 3);
  EXPECT_EQ(exit_code(StepSizeError("x")), 3);
  EXPECT_EQ(exit_code(TruncationError("x", 10)), 4);
  EXPECT_EQ(exit_code(FitError("x")), 1);
  EXPECT_EQ(error_report(SchemaError("x"))["type"], "schema");
}

TEST(Scenario, HashIgnoresKeyOrderButNotValues) {
  const Scenario a = parse_scenario(quick_gate_z());
  const Scenario b = parse_scenario(nlohmann::json::parse(
      R"({"settings": {"memory_dim": 14, "dt_ns": 5, "epsilon_z": 0.002, "alpha": 1.5,
          "durations_ns": {"step": 20, "start": 0, "stop": 40}},
          "seed": 3, "name": "quick_z", "kind": "gate_z"})"));
  EXPECT_EQ(scenario_hash(a), scenario_hash(b));
  EXPECT_EQ(scenario_hash(a).size(), 16u);
  auto doc = quick_gate_z();
  doc["seed"] = 4;
  EXPECT_NE(scenario_hash(parse_scenario(doc)), scenario_hash(a));
}

TEST(Scenario, RunWritesTaggedOutputsDeterministically) {
  const Scenario s = parse_scenario(quick_gate_z());
  const fs::path one = scratch("one"), two = scratch("two");
  const RunResult r1 = run_scenario(s, one);
  const RunResult r2 = run_scenario(s, two);
  ASSERT_EQ(r1.files.size(), r2.files.size());
  ASSERT_FALSE(r1.files.empty());
  bool saw_csv = false, saw_json = false;
  for (std::size_t k = 0; k < r1.files.size(); ++k) {
    EXPECT_EQ(r1.files[k].filename(), r2.files[k].filename());
    EXPECT_EQ(slurp(r1.files[k]), slurp(r2.files[k])) << r1.files[k];
    saw_csv |= r1.files[k].extension() == ".csv";
    saw_json |= r1.files[k].extension() == ".json";
  }
  EXPECT_TRUE(saw_csv);
  EXPECT_TRUE(saw_json);
  const auto meta = nlohmann::json::parse(slurp(one / "quick_z.json"))["meta"];
  EXPECT_EQ(meta["scenario_hash"], scenario_hash(s));
  EXPECT_EQ(meta["seed"], 3);
  EXPECT_EQ(meta["kind"], "gate_z");
  EXPECT_TRUE(meta["params"].is_object());
  fs::remove_all(one);
  fs::remove_all(two);
}

TEST(Scenario, BundledScenariosValidate) {
  const auto files = list_bundled();
  EXPECT_GE(files.size(), 8u);
  for (const auto& f : files) {
    EXPECT_NO_THROW(validate_scenario(load_scenario(f))) << f;
  }
  EXPECT_TRUE(fs::exists(resolve_scenario("gate_z")));
}

TEST(Scenario, ParseErrorsCarryLineAndColumn) {
  const fs::path dir = scratch("parse");
  std::ofstream(dir / "broken.json") << "{\n  \"kind\": \"gate_z\",\n  \"name\": oops\n}\n";
  try {
    load_scenario(dir / "broken.json");
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("broken.json:3:"), std::string::npos) << e.what();
  }
  fs::remove_all(dir);
}

TEST(CliBinary, ExitCodes) {
  const fs::path dir = scratch("binary");
  std::ofstream(dir / "bad.json") << R"({"kind": "gate_z", "name": "bad", "settings": {}})";
  auto big = quick_gate_z();
  big["settings"]["alpha"] = 5.0;
  big["settings"]["memory_dim"] = 20;
  std::ofstream(dir / "trunc.json") << big.dump();
  std::ofstream(dir / "ok.json") << quick_gate_z().dump();
  EXPECT_EQ(run_binary("validate " + (dir / "bad.json").string()), 2);
  EXPECT_EQ(run_binary("validate " + (dir / "trunc.json").string()), 4);
  EXPECT_EQ(run_binary("validate " + (dir / "ok.json").string()), 0);
  EXPECT_EQ(run_binary("validate " + (dir / "missing.json").string()), 2);
  EXPECT_EQ(run_binary("validate " + (dir / "trunc.json").string() + " --dims 46"), 0);
  EXPECT_EQ(run_binary("list"), 0);
  EXPECT_EQ(run_binary("frobnicate"), 2);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace catsim::cli

#endif  // CATSIM_HAVE_CLI
