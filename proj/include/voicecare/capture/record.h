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

#ifndef VOICECARE_CAPTURE_RECORD_H_
#define VOICECARE_CAPTURE_RECORD_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <variant>

#include "voicecare/audio/clip.h"
#include "voicecare/error.h"

namespace voicecare::capture {

struct NoiseGateConfig {
  double highpass_cutoff_hz = 100.0;
  // Windows whose RMS (after the high-pass) is below this level are zeroed.
  double gate_threshold = 0.003;
  bool enabled = true;
};

struct RecordPolicy {
  double chunk_seconds = 4.0;
  double silence_rms_threshold = 0.01;
  int max_chunks = 15;
  NoiseGateConfig noise_gate;

  std::size_t chunk_frames(const audio::AudioFormat& format) const;
  double max_duration_seconds() const { return chunk_seconds * max_chunks; }
};

// Throws Error(kInvalidArgument) when a field is out of range for `format`.
void Validate(const RecordPolicy& policy,
              const audio::AudioFormat& format = audio::kDriverFormat);
void Validate(const NoiseGateConfig& config,
              const audio::AudioFormat& format = audio::kDriverFormat);

// Supplies successive fixed-length chunks of microphone audio. A source may
// throw from NextChunk() to signal a device failure.
class ChunkSource {
 public:
  virtual ~ChunkSource() = default;
  virtual audio::AudioClip NextChunk() = 0;
};

// Accepts frames for playback. Returns how many of the offered frames were
// taken; fewer than offered means the device failed.
class FrameSink {
 public:
  virtual ~FrameSink() = default;
  virtual std::size_t Write(const audio::AudioFormat& format,
                            std::span<const std::int32_t> interleaved) = 0;
};

// Serves a clip chunk by chunk, padding the final chunk with silence and
// returning silent chunks once the clip is exhausted, like an idle
// microphone. The clip is converted to `format` first. Every chunk carries
// the clip's metadata.
class FileChunkSource : public ChunkSource {
 public:
  FileChunkSource(const audio::AudioClip& clip, std::size_t chunk_frames,
                  const audio::AudioFormat& format = audio::kDriverFormat);

  audio::AudioClip NextChunk() override;
  std::size_t chunks_served() const { return served_; }

 private:
  audio::AudioClip clip_;
  std::size_t chunk_frames_;
  std::size_t cursor_ = 0;
  std::size_t served_ = 0;
};

struct Answered {
  audio::AudioClip clip;
  bool truncated = false;
};
struct NoAnswer {};

struct RecordingOutcome {
  std::variant<NoAnswer, Answered> result;
  std::size_t chunks_consumed = 0;

  bool answered() const { return std::holds_alternative<Answered>(result); }
  const Answered& answer() const { return std::get<Answered>(result); }
};

// Raised by RecordAnswer when the source fails after the loop started.
class SourceFailure : public Error {
 public:
  SourceFailure(const std::string& message, std::optional<audio::AudioClip> partial,
                std::size_t chunks_consumed)
      : Error(ErrorCode::kSourceFailure, message),
        partial_(std::move(partial)),
        chunks_consumed_(chunks_consumed) {}

  // Voiced chunks captured before the failure, if any.
  const std::optional<audio::AudioClip>& partial() const { return partial_; }
  std::size_t chunks_consumed() const { return chunks_consumed_; }

 private:
  std::optional<audio::AudioClip> partial_;
  std::size_t chunks_consumed_;
};

class SinkFailure : public Error {
 public:
  explicit SinkFailure(std::size_t frames_written)
      : Error(ErrorCode::kSinkFailure,
              "sink failed after " + std::to_string(frames_written) + " frames"),
        frames_written_(frames_written) {}

  std::size_t frames_written() const { return frames_written_; }

 private:
  std::size_t frames_written_;
};

// True iff RmsLevel(chunk) < threshold.
bool DetectSilence(const audio::AudioClip& chunk, double threshold);

// Called with each voiced chunk as soon as it is accepted, so a consumer
// (e.g. streaming transcription) can start before the answer is complete.
using VoicedChunkObserver = std::function<void(const audio::AudioClip& chunk, std::size_t index)>;

// The record loop. A silent first chunk means no answer. Otherwise voiced
// chunks accumulate until the first silent chunk (discarded) or until
// policy.max_chunks voiced chunks have been taken, in which case the answer
// is marked truncated. The concatenated answer is passed through NoiseGate.
// Never pulls more than max_chunks + 1 chunks.
RecordingOutcome RecordAnswer(ChunkSource& source, const RecordPolicy& policy,
                              const VoicedChunkObserver& observer = {});

// 4th-order Butterworth high-pass at the configured cutoff followed by an
// RMS gate over 20 ms windows. The result is tagged with the configuration
// so that gating an already gated clip is a no-op.
audio::AudioClip NoiseGate(const audio::AudioClip& clip, const NoiseGateConfig& config);

inline constexpr char kNoiseGateTag[] = "noise_gate";
inline constexpr double kGateWindowSeconds = 0.02;

// Writes every frame of `clip` to `sink` in order and returns the count.
// Throws SinkFailure carrying the frames delivered before the failure.
std::size_t Playback(const audio::AudioClip& clip, FrameSink& sink);

// Sink that keeps nothing and accepts everything.
class DiscardingSink : public FrameSink {
 public:
  std::size_t Write(const audio::AudioFormat&, std::span<const std::int32_t> interleaved) override;
  std::size_t frames() const { return frames_; }

 private:
  std::size_t frames_ = 0;
};

}  // namespace voicecare::capture

#endif  // VOICECARE_CAPTURE_RECORD_H_
