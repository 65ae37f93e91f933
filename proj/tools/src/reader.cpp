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

#include "reader.hpp"

#include <cmath>

#include "catsim/errors.hpp"

namespace catsim::cli {

Reader::Reader(const nlohmann::json& j, std::string path)
    : j_(j), path_(std::move(path)) {
  if (!j_.is_object()) throw SchemaError(path_ + ": expected an object");
}

std::string Reader::field(const std::string& key) const {
  return path_.empty() ? key : path_ + "." + key;
}

void Reader::fail(const std::string& key, const std::string& what) const {
  throw SchemaError(field(key) + ": " + what);
}

bool Reader::has(const std::string& key) const {
  const bool present = j_.contains(key) && !j_.at(key).is_null();
  if (j_.contains(key)) used_.insert(key);
  return present;
}

const nlohmann::json& Reader::at(const std::string& key) const {
  if (!has(key)) fail(key, "required field is missing");
  return j_.at(key);
}

double Reader::number(const std::string& key) const {
  const nlohmann::json& v = at(key);
  if (!v.is_number()) fail(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(key, "expected a finite number");
  return x;
}

double Reader::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

int Reader::integer(const std::string& key) const {
  const nlohmann::json& v = at(key);
  if (!v.is_number_integer()) fail(key, "expected an integer");
  return v.get<int>();
}

int Reader::integer(const std::string& key, int fallback) const {
  return has(key) ? integer(key) : fallback;
}

bool Reader::boolean(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const nlohmann::json& v = j_.at(key);
  if (!v.is_boolean()) fail(key, "expected true or false");
  return v.get<bool>();
}

std::string Reader::string(const std::string& key) const {
  const nlohmann::json& v = at(key);
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

std::string Reader::string(const std::string& key,
                           const std::string& fallback) const {
  return has(key) ? string(key) : fallback;
}

cplx Reader::complex(const std::string& key) const {
  const nlohmann::json& v = at(key);
  if (v.is_number()) return {number(key), 0.0};
  if (!v.is_object()) fail(key, "expected a number or {\"re\", \"im\"}");
  const Reader r(v, field(key));
  const cplx z(r.number("re", 0.0), r.number("im", 0.0));
  r.finish();
  return z;
}

cplx Reader::complex(const std::string& key, cplx fallback) const {
  return has(key) ? complex(key) : fallback;
}

std::vector<double> Reader::numbers(const std::string& key) const {
  const nlohmann::json& v = at(key);
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& x : v) {
      if (!x.is_number()) fail(key, "expected an array of numbers");
      out.push_back(x.get<double>());
    }
  } else if (v.is_object()) {
    const Reader r(v, field(key));
    const double start = r.number("start"), stop = r.number("stop");
    if (r.has("count") == r.has("step")) {
      fail(key, "a range needs exactly one of \"count\" and \"step\"");
    }
    if (r.has("count")) {
      const int n = r.integer("count");
      if (n < 1) fail(key, "count must be >= 1");
      for (int k = 0; k < n; ++k) {
        out.push_back(n == 1 ? start : start + (stop - start) * k / (n - 1));
      }
    } else {
      const double step = r.number("step");
      if (!(step > 0.0) || stop < start) {
        fail(key, "a stepped range needs step > 0 and stop >= start");
      }
      const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
      for (int k = 0; k < n; ++k) out.push_back(start + step * k);
    }
    r.finish();
  } else {
    fail(key, "expected an array or a range object");
  }
  if (out.empty()) fail(key, "expected at least one value");
  return out;
}

std::vector<double> Reader::numbers(const std::string& key,
                                    const std::vector<double>& fallback) const {
  return has(key) ? numbers(key) : fallback;
}

std::vector<std::string> Reader::strings(
    const std::string& key, const std::vector<std::string>& fallback) const {
  if (!has(key)) return fallback;
  const nlohmann::json& v = j_.at(key);
  if (!v.is_array() || v.empty()) fail(key, "expected a non-empty array of strings");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) fail(key, "expected a non-empty array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

Reader Reader::object(const std::string& key) const {
  const nlohmann::json& v = at(key);
  if (!v.is_object()) fail(key, "expected an object");
  return Reader(v, field(key));
}

std::optional<Reader> Reader::optional_object(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return object(key);
}

void Reader::finish() const {
  for (const auto& item : j_.items()) {
    if (!used_.count(item.key())) fail(item.key(), "unknown field");
  }
}

}  // namespace catsim::cli
