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

#ifndef SLOTAUG_ERROR_H_
#define SLOTAUG_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slotaug {

enum class ErrorCode {
  // Corpus format and validation.
  kLineCountMismatch,
  kTokenTagLengthMismatch,
  kMalformedBioTag,
  kInvalidToken,
  kEmptyUtterance,
  kIo,
  // Splitting.
  kInvalidFraction,
  kEmptyResult,
  // Transform.
  kMissingDescription,
  kNoSlots,
  // Loss.
  kInvalidEpsilon,
  kVocabTooSmall,
  kShapeMismatch,
  kNonFinite,
  // Metrics.
  kEmptyOriginal,
  kEmptyAugmented,
  kAlignmentMismatch,
  // Configuration and arguments.
  kInvalidConfig,
  kInvalidArgument,
};

const char *error_code_name(ErrorCode code);

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Corpus errors carry the file and a 1-based location. A zero line or
// position means the location does not apply.
class CorpusError : public Error {
 public:
  CorpusError(ErrorCode code, const std::string &message,
              std::string file = {}, std::size_t line = 0,
              std::size_t position = 0);

  const std::string &file() const { return file_; }
  std::size_t line() const { return line_; }
  std::size_t position() const { return position_; }

 private:
  std::string file_;
  std::size_t line_;
  std::size_t position_;
};

}  // namespace slotaug

#endif  // SLOTAUG_ERROR_H_
