// Copyright 2026 The Qollide Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qollide {

enum class ErrorKind {
  InvalidArgument,  // malformed input, bad parameter values
  Dimension,        // shape mismatch
  Range,            // index or count out of range
  Numeric,          // invariant violated during computation
  Io,
};

/// Every failure in the core is reported through this exception. `check()`
/// names the invariant or field that failed so front ends can surface it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string check, const std::string& message)
      : std::runtime_error(check + ": " + message), kind_(kind), check_(std::move(check)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& check() const noexcept { return check_; }

 private:
  ErrorKind kind_;
  std::string check_;
};

}  // namespace qollide
