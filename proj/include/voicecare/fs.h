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


#ifndef VOICECARE_FS_H_
#define VOICECARE_FS_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace voicecare {

// Reads a whole file. Throws Error(kNotFound) if it cannot be opened.
std::string ReadFileBytes(const std::filesystem::path& path);

// Writes and fsyncs `path`. Throws Error(kStorageFailure).
void WriteFileDurable(const std::filesystem::path& path, std::string_view bytes);

// Writes `<path>.tmp`, fsyncs it, renames it over `path` and fsyncs the
// parent directory. Readers see either the old file or the new one.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view bytes);

// fsync on a directory so that renames and creations within it persist.
void SyncDirectory(const std::filesystem::path& dir);

}  // namespace voicecare

#endif  // VOICECARE_FS_H_
