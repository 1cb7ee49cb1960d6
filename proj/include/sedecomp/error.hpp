// sedecomp/error.hpp

// Copyright 2026  The sedecomp Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sedecomp {

// Broad failure classes. The CLI maps these onto its exit codes.
enum class ErrorKind {
  kValidation,  // bad arguments, mismatched shapes, malformed input records
  kDegenerate,  // numerically undefined decomposition or metric
  kIo,          // file system or file-format failure
};

inline const char *ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kDegenerate: return "degenerate";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

  /// What the error is about, e.g. an utterance id. Empty when unknown.
  const std::string &context() const noexcept { return context_; }
  Error &set_context(std::string context) {
    context_ = std::move(context);
    return *this;
  }

 private:
  ErrorKind kind_;
  std::string context_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string &what)
      : Error(ErrorKind::kValidation, what) {}
};

/// Raised when the speech/noise basis is collinear (or a zero vector), or
/// when a metric is 0/0.
class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string &what)
      : Error(ErrorKind::kDegenerate, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string &what) : Error(ErrorKind::kIo, what) {}
};

}  // namespace sedecomp
