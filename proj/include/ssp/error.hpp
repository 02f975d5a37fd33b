// Copyright 2026 The SSP Annotator Authors.
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


#ifndef SSP_ERROR_HPP_
#define SSP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ssp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed resource or document text. line() is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        detail_(message),
        line_(line) {}

  int line() const { return line_; }
  // The message without the line prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  int line_;
};

// Resources that parse but violate a cross-reference or structural rule.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A match produced output that cannot be turned into flat annotations.
class AnnotationError : public Error {
 public:
  using Error::Error;
};

}  // namespace ssp

#endif  // SSP_ERROR_HPP_
