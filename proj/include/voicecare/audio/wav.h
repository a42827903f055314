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
#ifndef VOICECARE_AUDIO_WAV_H_
#define VOICECARE_AUDIO_WAV_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "voicecare/audio/clip.h"

namespace voicecare::audio {

// Chunk identifier of the metadata chunk written after "data". The payload
// is UTF-8 text, one "key=value" line per entry, sorted by key. Backslash,
// '=', LF and CR inside keys and values are written as \\, \=, \n and \r.
inline constexpr char kMetadataChunkId[4] = {'v', 'c', 'm', 'd'};

// Parses a RIFF/WAVE PCM file. Unknown chunks other than the metadata chunk
// are skipped.
//
// Throws Error(kMalformedFile) on bad magic, truncated chunks or a data chunk
// that is not a whole number of frames, and Error(kUnsupportedFormat) for
// compressed codecs, float PCM, bit depths other than 16/24 or more than two
// channels.
AudioClip ParseWav(std::span<const std::uint8_t> bytes);

// Canonical 44-byte header ("RIFF", "WAVE", 16-byte "fmt " with tag 1,
// "data"), little-endian packed samples, a pad byte after odd-sized chunks,
// then the metadata chunk when the clip has any tags.
std::vector<std::uint8_t> WriteWav(const AudioClip& clip);

AudioClip ReadWavFile(const std::filesystem::path& path);
void WriteWavFile(const AudioClip& clip, const std::filesystem::path& path);

std::string EncodeMetadata(const Metadata& metadata);
Metadata DecodeMetadata(std::string_view payload);

}  // namespace voicecare::audio

#endif  // VOICECARE_AUDIO_WAV_H_
