// Copyright 2026 The Artpref Authors.
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

#ifndef ARTPREF_ERROR_H_
#define ARTPREF_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace artpref {

// Every failure the library reports carries one of these codes. Codes up to
// kLastValidationCode describe bad input; the rest are runtime failures.
enum class ErrorCode {
  // Validation.
  kInvalidArgument,
  kImageTooSmall,
  kDimensionMismatch,
  kShapeMismatch,
  kDuplicateItem,
  kNonFiniteValue,
  kEmptyInput,
  kLengthMismatch,
  kInvalidLabel,
  kBatchTooSmall,
  kTooFewItems,
  kInsufficientData,
  kConstantTarget,
  kMalformedRow,
  kOutOfRangeRating,
  kDuplicateKey,
  kMissingRating,
  kUnknownItem,
  kPoolExhausted,
  kOutOfOrder,
  kDuplicateResponse,
  kValueKindMismatch,
  kUnknownSession,
  kUnratedItem,
  kEmptyGroup,
  // Runtime.
  kStaleCache,
  kIoFailure,
  kUnsupportedFormat,
  kRunFailed,
};

inline constexpr ErrorCode kLastValidationCode = ErrorCode::kEmptyGroup;

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const { return code_; }
  // The message without the code prefix.
  const std::string& message() const { return message_; }
  bool is_validation() const { return code_ <= kLastValidationCode; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace artpref

#endif  // ARTPREF_ERROR_H_
