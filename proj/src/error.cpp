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

#include "scatser/error.hpp"

namespace scatser {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFileNotFound: return "FileNotFound";
    case ErrorCode::kUnsupportedEncoding: return "UnsupportedEncoding";
    case ErrorCode::kCorruptHeader: return "CorruptHeader";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kAxisTooShort: return "AxisTooShort";
    case ErrorCode::kSignalTooShort: return "SignalTooShort";
    case ErrorCode::kTooFewFrames: return "TooFewFrames";
    case ErrorCode::kTooFewRows: return "TooFewRows";
    case ErrorCode::kDegenerateClass: return "DegenerateClass";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kTooFewSpeakers: return "TooFewSpeakers";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kEmptyMatrix: return "EmptyMatrix";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kProvenanceMismatch: return "ProvenanceMismatch";
  }
  return "Unknown";
}

}  // namespace scatser
