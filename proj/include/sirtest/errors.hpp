// Copyright 2026 The sirtest Authors
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

#ifndef SIRTEST_ERRORS_HPP
#define SIRTEST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sirtest {

// Base of every error the core throws. The C API maps each subclass onto a
// status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or argument (bad step, out-of-range bounds, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// The integrator left the admissible state box; usually the step is too large.
class StateBlowupError : public Error {
 public:
  using Error::Error;
};

// Input outside the mathematical domain of an analytic formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Regression window carries no infection signal.
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

// Two records do not share a sampling grid.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

// Query time outside a record's span.
class RangeError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace sirtest

#endif  // SIRTEST_ERRORS_HPP
