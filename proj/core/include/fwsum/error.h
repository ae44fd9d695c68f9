// Copyright 2026 The fwsum Authors.
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

#ifndef FWSUM_ERROR_H_
#define FWSUM_ERROR_H_

#include <stdexcept>
#include <string>

namespace fwsum {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unreadable input data (documents, embedding files, datasets).
class InputError : public Error {
 public:
  using Error::Error;
};

// Invalid or inconsistent configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Numerical failure inside a solver, or a precondition the solver enforces.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace fwsum

#endif  // FWSUM_ERROR_H_
