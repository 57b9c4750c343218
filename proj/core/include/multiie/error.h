// Copyright 2026 The MultiIE Authors.
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

#ifndef MULTIIE_ERROR_H_
#define MULTIIE_ERROR_H_

#include <stdexcept>
#include <string>

namespace multiie {

// Base class for every error raised by the library. The CLI maps
// DataError/SchemaError to exit code 2 and ArgumentError/ConfigError to 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand dimensions do not line up.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A precondition on an argument value was violated.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Invalid model configuration (e.g. embedding dim not divisible by heads).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A relation or predicate does not agree with the loaded schema set.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// Training diverged or produced non-finite values.
class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace multiie

#endif  // MULTIIE_ERROR_H_
