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

#include "voicecare/audio/convert.h"

#include <algorithm>
#include <cmath>
#include <vector>

namespace voicecare::audio {
namespace {

std::int32_t RoundAndClamp(double v, const AudioFormat& f) {
  // std::round rounds half away from zero.
  const double r = std::round(v);
  return static_cast<std::int32_t>(
      std::clamp(r, static_cast<double>(f.min_sample()), static_cast<double>(f.max_sample())));
}

}  // namespace

std::size_t ResampledFrameCount(std::size_t frames, int source_rate, int target_rate) {
  const auto n = static_cast<unsigned long long>(frames);
  const auto s = static_cast<unsigned long long>(source_rate);
  const auto t = static_cast<unsigned long long>(target_rate);
  return static_cast<std::size_t>((2 * n * t + s) / (2 * s));
}

AudioClip Convert(const AudioClip& clip, const AudioFormat& target) {
  ValidateFormat(target);
  const AudioFormat& source = clip.format();
  if (source == target) return clip;

  const double depth_scale = std::ldexp(1.0, target.bit_depth - source.bit_depth);
  const std::size_t in_frames = clip.frame_count();

  // Channel and depth mapping at the source rate.
  std::vector<double> mapped(in_frames * target.channels);
  for (std::size_t i = 0; i < in_frames; ++i) {
    if (source.channels == target.channels) {
      for (int c = 0; c < target.channels; ++c) {
        mapped[i * target.channels + c] = clip.sample(i, c) * depth_scale;
      }
    } else if (source.channels == 1) {
      const double v = clip.sample(i, 0) * depth_scale;
      for (int c = 0; c < target.channels; ++c) mapped[i * target.channels + c] = v;
    } else {
      double sum = 0.0;
      for (int c = 0; c < source.channels; ++c) sum += clip.sample(i, c);
      mapped[i] = sum / source.channels * depth_scale;
    }
  }

  std::vector<std::int32_t> out;
  if (source.sample_rate_hz == target.sample_rate_hz) {
    out.reserve(mapped.size());
    for (double v : mapped) out.push_back(RoundAndClamp(v, target));
    return AudioClip(target, std::move(out), clip.metadata());
  }

  const std::size_t out_frames =
      ResampledFrameCount(in_frames, source.sample_rate_hz, target.sample_rate_hz);
  out.reserve(out_frames * target.channels);
  const auto s = static_cast<unsigned long long>(source.sample_rate_hz);
  const auto t = static_cast<unsigned long long>(target.sample_rate_hz);
  for (std::size_t j = 0; j < out_frames; ++j) {
    // Exact rational source position j * s / t.
    const unsigned long long num = static_cast<unsigned long long>(j) * s;
    std::size_t i0 = static_cast<std::size_t>(num / t);
    double frac = static_cast<double>(num % t) / static_cast<double>(t);
    if (i0 >= in_frames - 1) {
      i0 = in_frames - 1;
      frac = 0.0;
    }
    const std::size_t i1 = std::min(i0 + 1, in_frames - 1);
    for (int c = 0; c < target.channels; ++c) {
      const double a = mapped[i0 * target.channels + c];
      const double b = mapped[i1 * target.channels + c];
      out.push_back(RoundAndClamp(a + (b - a) * frac, target));
    }
  }
  return AudioClip(target, std::move(out), clip.metadata());
}

double NormalizedSample(std::int32_t sample, int bit_depth) {
  const double full = std::ldexp(1.0, bit_depth - 1);
  return sample >= 0 ? sample / (full - 1.0) : sample / full;
}

double RmsLevel(const AudioClip& clip) {
  const auto samples = clip.samples();
  if (samples.empty()) return 0.0;
  double acc = 0.0;
  for (auto s : samples) {
    const double v = NormalizedSample(s, clip.format().bit_depth);
    acc += v * v;
  }
  return std::sqrt(acc / static_cast<double>(samples.size()));
}

}  // namespace voicecare::audio
