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
#ifndef VOICECARE_AUDIO_CLIP_H_
#define VOICECARE_AUDIO_CLIP_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace voicecare::audio {

struct AudioFormat {
  int sample_rate_hz = 48000;
  int bit_depth = 24;
  int channels = 2;

  int bytes_per_sample() const { return bit_depth / 8; }
  int block_align() const { return channels * bytes_per_sample(); }
  std::int32_t max_sample() const { return (std::int32_t{1} << (bit_depth - 1)) - 1; }
  std::int32_t min_sample() const { return -(std::int32_t{1} << (bit_depth - 1)); }

  friend bool operator==(const AudioFormat&, const AudioFormat&) = default;
};

// Playback/record format of the device audio driver.
inline constexpr AudioFormat kDriverFormat{48000, 24, 2};
// Typical format of authored or synthesized material before conversion.
inline constexpr AudioFormat kSourceFormat{44100, 16, 1};

// Throws Error(kInvalidArgument) unless bit depth is 16/24, channels 1/2 and
// the rate is positive.
void ValidateFormat(const AudioFormat& format);

std::string ToString(const AudioFormat& format);

// Free-form text tags carried alongside the samples (see wav.h for the
// on-disk encoding).
using Metadata = std::map<std::string, std::string>;

// Interleaved integer PCM with an explicit format. Immutable once built;
// the constructor enforces the sample-count and range invariants.
class AudioClip {
 public:
  AudioClip() : AudioClip(AudioFormat{}, {}) {}
  AudioClip(AudioFormat format, std::vector<std::int32_t> samples,
            Metadata metadata = {});

  // A clip of digital silence.
  static AudioClip Silence(AudioFormat format, std::size_t frames);

  const AudioFormat& format() const { return format_; }
  std::span<const std::int32_t> samples() const { return samples_; }
  const Metadata& metadata() const { return metadata_; }

  std::size_t frame_count() const {
    return samples_.size() / static_cast<std::size_t>(format_.channels);
  }
  double duration_seconds() const {
    return static_cast<double>(frame_count()) / format_.sample_rate_hz;
  }
  bool empty() const { return samples_.empty(); }

  std::int32_t sample(std::size_t frame, int channel) const {
    return samples_[frame * format_.channels + channel];
  }

  // Metadata lookup; empty string when absent.
  std::string tag(const std::string& key) const;

  AudioClip WithMetadata(Metadata metadata) const;

  // Frames [begin, begin + count), clamped to the clip. Metadata is kept.
  AudioClip Slice(std::size_t begin, std::size_t count) const;

  friend bool operator==(const AudioClip&, const AudioClip&) = default;

 private:
  AudioFormat format_;
  std::vector<std::int32_t> samples_;
  Metadata metadata_;
};

// Joins clips of one format end to end. Metadata is the union of the inputs
// with earlier clips winning on key collisions. An empty input yields an
// empty clip of `format`.
AudioClip Concatenate(std::span<const AudioClip> clips, const AudioFormat& format);

}  // namespace voicecare::audio

#endif  // VOICECARE_AUDIO_CLIP_H_
