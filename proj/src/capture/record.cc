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

#include "voicecare/capture/record.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "voicecare/audio/convert.h"

namespace voicecare::capture {
namespace {

constexpr std::size_t kPlaybackPeriodFrames = 4800;

// Direct form I biquad, RBJ high-pass coefficients.
class HighPassBiquad {
 public:
  HighPassBiquad(double cutoff_hz, double sample_rate, double q) {
    const double w0 = 2.0 * std::numbers::pi * cutoff_hz / sample_rate;
    const double cosw = std::cos(w0);
    const double alpha = std::sin(w0) / (2.0 * q);
    const double a0 = 1.0 + alpha;
    b0_ = (1.0 + cosw) / 2.0 / a0;
    b1_ = -(1.0 + cosw) / a0;
    b2_ = b0_;
    a1_ = -2.0 * cosw / a0;
    a2_ = (1.0 - alpha) / a0;
  }

  double Process(double x) {
    const double y = b0_ * x + b1_ * x1_ + b2_ * x2_ - a1_ * y1_ - a2_ * y2_;
    x2_ = x1_;
    x1_ = x;
    y2_ = y1_;
    y1_ = y;
    return y;
  }

 private:
  double b0_, b1_, b2_, a1_, a2_;
  double x1_ = 0, x2_ = 0, y1_ = 0, y2_ = 0;
};

std::string GateSignature(const NoiseGateConfig& config) {
  std::ostringstream os;
  os.precision(17);
  os << "butterworth4:" << config.highpass_cutoff_hz << ";gate:" << config.gate_threshold
     << ";window:" << kGateWindowSeconds;
  return os.str();
}

}  // namespace

std::size_t RecordPolicy::chunk_frames(const audio::AudioFormat& format) const {
  return static_cast<std::size_t>(std::llround(chunk_seconds * format.sample_rate_hz));
}

void Validate(const NoiseGateConfig& config, const audio::AudioFormat& format) {
  if (!(config.highpass_cutoff_hz > 0.0) ||
      !(config.highpass_cutoff_hz < format.sample_rate_hz / 2.0)) {
    throw Error(ErrorCode::kInvalidArgument, "high-pass cutoff must lie in (0, Nyquist)");
  }
  if (!(config.gate_threshold >= 0.0 && config.gate_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gate threshold must lie in [0, 1]");
  }
}

void Validate(const RecordPolicy& policy, const audio::AudioFormat& format) {
  if (!(policy.chunk_seconds > 0.0) || policy.chunk_frames(format) == 0) {
    throw Error(ErrorCode::kInvalidArgument, "chunk length must be positive");
  }
  if (!(policy.silence_rms_threshold > 0.0 && policy.silence_rms_threshold < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "silence threshold must lie in (0, 1)");
  }
  if (policy.max_chunks < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_chunks must be at least 1");
  }
  Validate(policy.noise_gate, format);
}

FileChunkSource::FileChunkSource(const audio::AudioClip& clip, std::size_t chunk_frames,
                                 const audio::AudioFormat& format)
    : clip_(audio::Convert(clip, format)), chunk_frames_(chunk_frames) {
  if (chunk_frames_ == 0) throw Error(ErrorCode::kInvalidArgument, "chunk_frames is 0");
}

audio::AudioClip FileChunkSource::NextChunk() {
  ++served_;
  const auto& f = clip_.format();
  audio::AudioClip part = clip_.Slice(cursor_, chunk_frames_);
  cursor_ += part.frame_count();
  if (part.frame_count() == chunk_frames_) return part;
  std::vector<std::int32_t> padded(part.samples().begin(), part.samples().end());
  padded.resize(chunk_frames_ * f.channels, 0);
  return audio::AudioClip(f, std::move(padded), clip_.metadata());
}

bool DetectSilence(const audio::AudioClip& chunk, double threshold) {
  return audio::RmsLevel(chunk) < threshold;
}

RecordingOutcome RecordAnswer(ChunkSource& source, const RecordPolicy& policy,
                              const VoicedChunkObserver& observer) {
  std::vector<audio::AudioClip> voiced;
  std::size_t consumed = 0;

  auto pull = [&]() -> audio::AudioClip {
    ++consumed;
    try {
      audio::AudioClip chunk = source.NextChunk();
      if (!voiced.empty() && chunk.format() != voiced.front().format()) {
        throw Error(ErrorCode::kSourceFailure, "chunk format changed mid-answer");
      }
      return chunk;
    } catch (const std::exception& e) {
      std::optional<audio::AudioClip> partial;
      if (!voiced.empty()) partial = audio::Concatenate(voiced, voiced.front().format());
      throw SourceFailure(std::string("chunk source failed: ") + e.what(), std::move(partial),
                          consumed);
    }
  };

  audio::AudioClip first = pull();
  if (DetectSilence(first, policy.silence_rms_threshold)) {
    return RecordingOutcome{NoAnswer{}, consumed};
  }
  if (observer) observer(first, 0);
  voiced.push_back(std::move(first));

  bool truncated = false;
  while (true) {
    if (voiced.size() >= static_cast<std::size_t>(policy.max_chunks)) {
      truncated = true;
      break;
    }
    audio::AudioClip chunk = pull();
    if (DetectSilence(chunk, policy.silence_rms_threshold)) break;
    if (observer) observer(chunk, voiced.size());
    voiced.push_back(std::move(chunk));
  }

  audio::AudioClip clip = audio::Concatenate(voiced, voiced.front().format());
  return RecordingOutcome{Answered{NoiseGate(clip, policy.noise_gate), truncated}, consumed};
}

audio::AudioClip NoiseGate(const audio::AudioClip& clip, const NoiseGateConfig& config) {
  if (!config.enabled) return clip;
  const std::string signature = GateSignature(config);
  if (clip.tag(kNoiseGateTag) == signature) return clip;

  const auto& f = clip.format();
  Validate(config, f);
  const std::size_t frames = clip.frame_count();
  const int channels = f.channels;

  // Butterworth pole pair Q values for order 4.
  constexpr double kQ[2] = {0.54119610014619701, 1.3065629648763766};
  std::vector<double> filtered(clip.samples().size());
  for (int c = 0; c < channels; ++c) {
    HighPassBiquad s1(config.highpass_cutoff_hz, f.sample_rate_hz, kQ[0]);
    HighPassBiquad s2(config.highpass_cutoff_hz, f.sample_rate_hz, kQ[1]);
    for (std::size_t i = 0; i < frames; ++i) {
      const std::size_t k = i * channels + c;
      filtered[k] = s2.Process(s1.Process(clip.samples()[k]));
    }
  }

  const double lo = f.min_sample();
  const double hi = f.max_sample();
  std::vector<std::int32_t> out(filtered.size());
  for (std::size_t k = 0; k < filtered.size(); ++k) {
    out[k] = static_cast<std::int32_t>(std::clamp(std::round(filtered[k]), lo, hi));
  }

  const std::size_t window =
      std::max<std::size_t>(1, static_cast<std::size_t>(kGateWindowSeconds * f.sample_rate_hz));
  for (std::size_t begin = 0; begin < frames; begin += window) {
    const std::size_t end = std::min(frames, begin + window);
    double acc = 0.0;
    for (std::size_t k = begin * channels; k < end * channels; ++k) {
      const double v = audio::NormalizedSample(out[k], f.bit_depth);
      acc += v * v;
    }
    const double rms = std::sqrt(acc / static_cast<double>((end - begin) * channels));
    if (rms < config.gate_threshold) {
      std::fill(out.begin() + begin * channels, out.begin() + end * channels, 0);
    }
  }

  audio::Metadata metadata = clip.metadata();
  metadata[kNoiseGateTag] = signature;
  return audio::AudioClip(f, std::move(out), std::move(metadata));
}

std::size_t Playback(const audio::AudioClip& clip, FrameSink& sink) {
  const auto& f = clip.format();
  const std::size_t frames = clip.frame_count();
  std::size_t written = 0;
  while (written < frames) {
    const std::size_t n = std::min(kPlaybackPeriodFrames, frames - written);
    const std::size_t accepted =
        sink.Write(f, clip.samples().subspan(written * f.channels, n * f.channels));
    written += std::min(accepted, n);
    if (accepted < n) throw SinkFailure(written);
  }
  return written;
}

std::size_t DiscardingSink::Write(const audio::AudioFormat& format,
                                  std::span<const std::int32_t> interleaved) {
  const std::size_t n = interleaved.size() / static_cast<std::size_t>(format.channels);
  frames_ += n;
  return n;
}

}  // namespace voicecare::capture
