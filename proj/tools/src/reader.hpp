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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "catsim/fock.hpp"

namespace catsim::cli {

// Typed, path-aware access to one JSON object. Every key read is recorded
// so finish() can reject the ones nobody asked for.
class Reader {
 public:
  Reader(const nlohmann::json& j, std::string path);

  bool has(const std::string& key) const;

  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key) const;
  int integer(const std::string& key, int fallback) const;
  bool boolean(const std::string& key, bool fallback) const;
  std::string string(const std::string& key) const;
  std::string string(const std::string& key, const std::string& fallback) const;
  // A number, or {"re": x, "im": y}.
  cplx complex(const std::string& key) const;
  cplx complex(const std::string& key, cplx fallback) const;
  // An array of numbers, {"start", "stop", "step"} or {"start", "stop",
  // "count"}; ranges include both ends.
  std::vector<double> numbers(const std::string& key) const;
  std::vector<double> numbers(const std::string& key,
                              const std::vector<double>& fallback) const;
  std::vector<std::string> strings(const std::string& key,
                                   const std::vector<std::string>& fallback) const;
  Reader object(const std::string& key) const;
  std::optional<Reader> optional_object(const std::string& key) const;

  // SchemaError naming the first key that was never read.
  void finish() const;

  [[noreturn]] void fail(const std::string& key, const std::string& what) const;
  std::string field(const std::string& key) const;

 private:
  const nlohmann::json& at(const std::string& key) const;

  const nlohmann::json& j_;
  std::string path_;
  mutable std::set<std::string> used_;
};

}  // namespace catsim::cli
