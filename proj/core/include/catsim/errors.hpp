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

#include <stdexcept>
#include <string>

namespace catsim {

// Base of every error raised by the toolkit. The CLI maps subclasses onto
// exit codes, so new failure modes should derive from the closest match.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidState : public Error {
 public:
  using Error::Error;
};

// Raised when a Fock truncation is too small for the requested amplitude.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, int required_dim)
      : Error(what), required_dim_(required_dim) {}
  int required_dim() const { return required_dim_; }

 private:
  int required_dim_;
};

// Trace drift beyond tolerance; the remedy is a smaller time step.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

// Non-finite entries appeared during integration.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// Fitting or optimisation failed to converge.
class FitError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace catsim
