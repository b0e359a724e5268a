// Copyright 2026 The ringpir Authors
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

#include "ringpir/errors.h"

namespace ringpir {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidModulus: return "InvalidModulus";
    case ErrorCode::kModulusMismatch: return "ModulusMismatch";
    case ErrorCode::kNonInvertible: return "NonInvertible";
    case ErrorCode::kMalformedElement: return "MalformedElement";
    case ErrorCode::kParamMismatch: return "ParamMismatch";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kInvalidIndex: return "InvalidIndex";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kMissingAnswer: return "MissingAnswer";
    case ErrorCode::kDuplicateServer: return "DuplicateServer";
    case ErrorCode::kUnsupportedModulus: return "UnsupportedModulus";
    case ErrorCode::kCoalitionTooLarge: return "CoalitionTooLarge";
    case ErrorCode::kRingTooLarge: return "RingTooLarge";
    case ErrorCode::kRowParamMismatch: return "RowParamMismatch";
    case ErrorCode::kInvalidAdversary: return "InvalidAdversary";
    case ErrorCode::kMalformedKey: return "MalformedKey";
    case ErrorCode::kMalformedFrame: return "MalformedFrame";
    case ErrorCode::kMalformedDatabase: return "MalformedDatabase";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kTransport: return "Transport";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kServerError: return "ServerError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

}  // namespace ringpir
