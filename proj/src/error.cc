// Copyright 2026 The slotaug Authors.
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

#include "slotaug/error.h"

#include <utility>

namespace slotaug {

const char *error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kLineCountMismatch: return "LineCountMismatch";
    case ErrorCode::kTokenTagLengthMismatch: return "TokenTagLengthMismatch";
    case ErrorCode::kMalformedBioTag: return "MalformedBioTag";
    case ErrorCode::kInvalidToken: return "InvalidToken";
    case ErrorCode::kEmptyUtterance: return "EmptyUtterance";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kInvalidFraction: return "InvalidFraction";
    case ErrorCode::kEmptyResult: return "EmptyResult";
    case ErrorCode::kMissingDescription: return "MissingDescription";
    case ErrorCode::kNoSlots: return "NoSlots";
    case ErrorCode::kInvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::kVocabTooSmall: return "VocabTooSmall";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kEmptyOriginal: return "EmptyOriginal";
    case ErrorCode::kEmptyAugmented: return "EmptyAugmented";
    case ErrorCode::kAlignmentMismatch: return "AlignmentMismatch";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

CorpusError::CorpusError(ErrorCode code, const std::string &message,
                         std::string file, std::size_t line,
                         std::size_t position)
    : Error(code, message),
      file_(std::move(file)),
      line_(line),
      position_(position) {}

}  // namespace slotaug
