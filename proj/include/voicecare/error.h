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
#ifndef VOICECARE_ERROR_H_
#define VOICECARE_ERROR_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace voicecare {

enum class ErrorCode {
  kInvalidArgument,
  kMalformedFile,
  kUnsupportedFormat,
  kSourceFailure,
  kSinkFailure,
  kNoSpeech,
  kEmptyGuessList,
  kEmptyText,
  kProviderUnavailable,
  kInvalidManifest,
  kStorageFailure,
  kAlreadyExists,
  kNotFound,
};

std::string_view ErrorCodeName(ErrorCode code);
// Inverse of ErrorCodeName; nullopt for unknown names.
std::optional<ErrorCode> ErrorCodeFromName(std::string_view name);

// Base class for every error raised by the library. Subclasses carry
// payloads (partial audio, diagnostics, ...) where an operation promises one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  // The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace voicecare

#endif  // VOICECARE_ERROR_H_
