// Copyright 2026 The Voicecare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "voicecare/error.h"

namespace voicecare {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kMalformedFile:
      return "MalformedFile";
    case ErrorCode::kUnsupportedFormat:
      return "UnsupportedFormat";
    case ErrorCode::kSourceFailure:
      return "SourceFailure";
    case ErrorCode::kSinkFailure:
      return "SinkFailure";
    case ErrorCode::kNoSpeech:
      return "NoSpeech";
    case ErrorCode::kEmptyGuessList:
      return "EmptyGuessList";
    case ErrorCode::kEmptyText:
      return "EmptyText";
    case ErrorCode::kProviderUnavailable:
      return "ProviderUnavailable";
    case ErrorCode::kInvalidManifest:
      return "InvalidManifest";
    case ErrorCode::kStorageFailure:
      return "StorageFailure";
    case ErrorCode::kAlreadyExists:
      return "StorageFailure(AlreadyExists)";
    case ErrorCode::kNotFound:
      return "NotFound";
  }
  return "Unknown";
}

std::optional<ErrorCode> ErrorCodeFromName(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(ErrorCode::kNotFound); ++i) {
    const auto code = static_cast<ErrorCode>(i);
    if (ErrorCodeName(code) == name) return code;
  }
  return std::nullopt;
}

}  // namespace voicecare
