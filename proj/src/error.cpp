/*
 * Copyright 2026 The Parity Audit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "parity/error.hpp"

namespace parity {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyLog: return "EmptyLog";
    case ErrorCode::kInsufficientRankDepth: return "InsufficientRankDepth";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kLabelNotFound: return "LabelNotFound";
    case ErrorCode::kDegenerateTable: return "DegenerateTable";
    case ErrorCode::kInvalidAlpha: return "InvalidAlpha";
    case ErrorCode::kCatalogZeroCount: return "CatalogZeroCount";
    case ErrorCode::kUnachievable: return "Unachievable";
    case ErrorCode::kEmptySkinMask: return "EmptySkinMask";
    case ErrorCode::kUnknownQuery: return "UnknownQuery";
    case ErrorCode::kNotEnoughItems: return "NotEnoughItems";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace parity
