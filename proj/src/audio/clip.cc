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
#include "voicecare/audio/clip.h"

#include <algorithm>
#include <utility>

#include "voicecare/error.h"

namespace voicecare::audio {

void ValidateFormat(const AudioFormat& format) {
  if (format.sample_rate_hz <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample rate must be positive");
  }
  if (format.bit_depth != 16 && format.bit_depth != 24) {
    throw Error(ErrorCode::kInvalidArgument,
                "bit depth must be 16 or 24, got " + std::to_string(format.bit_depth));
  }
  if (format.channels != 1 && format.channels != 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "channel count must be 1 or 2, got " + std::to_string(format.channels));
  }
}

std::string ToString(const AudioFormat& format) {
  return std::to_string(format.sample_rate_hz) + " Hz/" +
         std::to_string(format.bit_depth) + "-bit/" +
         (format.channels == 1 ? "mono" : std::to_string(format.channels) + "ch");
}

AudioClip::AudioClip(AudioFormat format, std::vector<std::int32_t> samples,
                     Metadata metadata)
    : format_(format), samples_(std::move(samples)), metadata_(std::move(metadata)) {
  ValidateFormat(format_);
  if (samples_.size() % static_cast<std::size_t>(format_.channels) != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "sample count is not a multiple of the channel count");
  }
  const auto lo = format_.min_sample();
  const auto hi = format_.max_sample();
  for (auto s : samples_) {
    if (s < lo || s > hi) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sample " + std::to_string(s) + " exceeds " +
                      std::to_string(format_.bit_depth) + "-bit range");
    }
  }
  for (const auto& [key, value] : metadata_) {
    if (key.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "metadata key must not be empty");
    }
  }
}

AudioClip AudioClip::Silence(AudioFormat format, std::size_t frames) {
  ValidateFormat(format);
  return AudioClip(format, std::vector<std::int32_t>(frames * format.channels, 0));
}

std::string AudioClip::tag(const std::string& key) const {
  auto it = metadata_.find(key);
  return it == metadata_.end() ? std::string() : it->second;
}

AudioClip AudioClip::WithMetadata(Metadata metadata) const {
  AudioClip out = *this;
  out.metadata_ = std::move(metadata);
  return out;
}

AudioClip AudioClip::Slice(std::size_t begin, std::size_t count) const {
  const auto frames = frame_count();
  begin = std::min(begin, frames);
  count = std::min(count, frames - begin);
  const auto ch = static_cast<std::size_t>(format_.channels);
  std::vector<std::int32_t> part(samples_.begin() + begin * ch,
                                 samples_.begin() + (begin + count) * ch);
  return AudioClip(format_, std::move(part), metadata_);
}

AudioClip Concatenate(std::span<const AudioClip> clips, const AudioFormat& format) {
  std::size_t total = 0;
  for (const auto& c : clips) {
    if (c.format() != format) {
      throw Error(ErrorCode::kInvalidArgument,
                  "cannot concatenate " + ToString(c.format()) + " into " +
                      ToString(format));
    }
    total += c.samples().size();
  }
  std::vector<std::int32_t> samples;
  samples.reserve(total);
  Metadata metadata;
  for (const auto& c : clips) {
    samples.insert(samples.end(), c.samples().begin(), c.samples().end());
    for (const auto& kv : c.metadata()) metadata.insert(kv);
  }
  return AudioClip(format, std::move(samples), std::move(metadata));
}

}  // namespace voicecare::audio
