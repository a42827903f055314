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

#ifndef VOICECARE_AUDIO_CONVERT_H_
#define VOICECARE_AUDIO_CONVERT_H_

#include <cstddef>
#include <cstdint>

#include "voicecare/audio/clip.h"

namespace voicecare::audio {

// Converts `clip` to `target` in a single pass:
//
//   * channels: mono to stereo duplicates, stereo to mono takes the mean;
//   * depth: 16 to 24 bit multiplies by 256, 24 to 16 bit divides by 256;
//   * rate: linear interpolation between neighbouring frames, producing
//     ResampledFrameCount() frames. Output frame j reads source position
//     j * source_rate / target_rate.
//
// Intermediate values stay in floating point and are rounded once, half away
// from zero, then clamped to the target range. Metadata is carried over.
// Converting to the clip's own format returns the clip unchanged.
AudioClip Convert(const AudioClip& clip, const AudioFormat& target);

// round(frames * target_rate / source_rate), half away from zero.
std::size_t ResampledFrameCount(std::size_t frames, int source_rate, int target_rate);

// Root mean square of all samples, normalised so that the most positive and
// most negative codes both map to magnitude 1. Zero for an empty clip.
double RmsLevel(const AudioClip& clip);

// Normalised magnitude of a single sample code at `bit_depth`.
double NormalizedSample(std::int32_t sample, int bit_depth);

}  // namespace voicecare::audio

#endif  // VOICECARE_AUDIO_CONVERT_H_
