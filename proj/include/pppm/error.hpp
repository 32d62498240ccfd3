// Copyright 2026 The PPPM Authors
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

namespace pppm {

// Base for every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An id that does not name an entity of the requested kind.
class LookupError : public Error {
 public:
  using Error::Error;
};

// An operation was called on a model that does not pass validate().
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A condition compared values of incompatible types at evaluation time.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// Bad lint configuration (unknown rule id, unknown severity name).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace pppm
