// Copyright 2026 The t2tfaith Authors.
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

#ifndef T2TFAITH_ERRORS_H_
#define T2TFAITH_ERRORS_H_

#include <stdexcept>
#include <string>

namespace t2tfaith {

// Base class for all errors raised by the library. The kind() string is the
// stable name used in CLI diagnostics and Python exception messages.
class Error : public std::runtime_error {
 public:
  Error(const std::string &kind, const std::string &message)
      : std::runtime_error(kind + ": " + message), kind_(kind) {}
  const std::string &kind() const { return kind_; }

 private:
  std::string kind_;
};

// Malformed input syntax (JSON, plan markup).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string &message)
      : Error("ParseError", message) {}
};

// Syntactically valid input that breaks a domain invariant.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string &message)
      : Error("ValidationError", message) {}
};

// Instance whose text has no tokens.
class DegenerateInstance : public Error {
 public:
  explicit DegenerateInstance(const std::string &message)
      : Error("DegenerateInstance", message) {}
};

class EmptyCorpus : public Error {
 public:
  explicit EmptyCorpus(const std::string &message)
      : Error("EmptyCorpus", message) {}
};

// Caller passed an argument combination the operation does not accept.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string &message)
      : Error("UsageError", message) {}
};

}  // namespace t2tfaith

#endif  // T2TFAITH_ERRORS_H_
