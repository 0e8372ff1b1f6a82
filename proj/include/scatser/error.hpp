/* Copyright 2026 The scatser Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SCATSER_ERROR_HPP_
#define SCATSER_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace scatser {

enum class ErrorCode {
  kFileNotFound,
  kUnsupportedEncoding,
  kCorruptHeader,
  kInvalidArgument,
  kInvalidSpec,
  kInvalidConfig,
  kLengthMismatch,
  kAxisTooShort,
  kSignalTooShort,
  kTooFewFrames,
  kTooFewRows,
  kDegenerateClass,
  kDimensionMismatch,
  kTooFewSpeakers,
  kUnknownLabel,
  kEmptyMatrix,
  kParseError,
  kProvenanceMismatch,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every library failure is reported through this one exception type; the
// code lets callers (and the CLI exit-status mapping) branch without string
// matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace scatser

#endif  // SCATSER_ERROR_HPP_
