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

#include "artpref/error.h"

namespace artpref {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kImageTooSmall: return "ImageTooSmall";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kDuplicateItem: return "DuplicateItem";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kInvalidLabel: return "InvalidLabel";
    case ErrorCode::kBatchTooSmall: return "BatchTooSmall";
    case ErrorCode::kTooFewItems: return "TooFewItems";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kConstantTarget: return "ConstantTarget";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kOutOfRangeRating: return "OutOfRangeRating";
    case ErrorCode::kDuplicateKey: return "DuplicateKey";
    case ErrorCode::kMissingRating: return "MissingRating";
    case ErrorCode::kUnknownItem: return "UnknownItem";
    case ErrorCode::kPoolExhausted: return "PoolExhausted";
    case ErrorCode::kOutOfOrder: return "OutOfOrder";
    case ErrorCode::kDuplicateResponse: return "DuplicateResponse";
    case ErrorCode::kValueKindMismatch: return "ValueKindMismatch";
    case ErrorCode::kUnknownSession: return "UnknownSession";
    case ErrorCode::kUnratedItem: return "UnratedItem";
    case ErrorCode::kEmptyGroup: return "EmptyGroup";
    case ErrorCode::kStaleCache: return "StaleCache";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kRunFailed: return "RunFailed";
  }
  return "Unknown";
}

}  // namespace artpref
