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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "../testing/audio_generators.h"

namespace voicecare::audio {
namespace {

// Enumerates output frames whose end instant (j + 1) / target_rate is no
// later than half an output period past the input's end. Exact integer
// comparisons; no closed-form rounding involved.
std::size_t CountOutputInstants(std::size_t in_frames, int source_rate, int target_rate) {
  std::size_t count = 0;
  const auto s = static_cast<unsigned long long>(source_rate);
  const auto t = static_cast<unsigned long long>(target_rate);
  // (j + 1) / t <= n / s + 1 / (2t)  <=>  2 (j + 1) s <= 2 n t + s
  while (2ULL * (count + 1) * s <= 2ULL * in_frames * t + s) ++count;
  return count;
}

TEST(ResampledFrameCount, MatchesCountingOracle) {
  const int rates[] = {8000, 22050, 44100, 48000};
  for (int s : rates) {
    for (int t : rates) {
      for (std::size_t n : {0, 1, 2, 3, 7, 100, 441, 44100, 12345}) {
        EXPECT_EQ(ResampledFrameCount(n, s, t), CountOutputInstants(n, s, t))
            << n << " frames " << s << " -> " << t;
      }
    }
  }
}

TEST(Convert, SameFormatIsIdentity) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    AudioClip clip = testing::RandomClip(rng, 2000);
    EXPECT_EQ(Convert(clip, clip.format()), clip);
  }
}

TEST(Convert, OneSecondSourceToDriverFormat) {
  AudioClip in = testing::Sine(kSourceFormat, 440.0, 0.5, 44100);
  AudioClip out = Convert(in, kDriverFormat);
  EXPECT_EQ(out.format(), kDriverFormat);
  EXPECT_EQ(out.frame_count(), CountOutputInstants(44100, 44100, 48000));
  EXPECT_EQ(out.frame_count(), 48000u);
  for (std::size_t i = 0; i < out.frame_count(); ++i) {
    ASSERT_EQ(out.sample(i, 0), out.sample(i, 1)) << "frame " << i;
  }
}

TEST(Convert, DcLevelIsPreservedWithinOneLsb) {
  for (std::int32_t v : {-32768, -12345, -1, 0, 1, 777, 32767}) {
    AudioClip in = testing::Constant(kSourceFormat, v, 4410);
    AudioClip out = Convert(in, kDriverFormat);
    const double expected = v * 256.0;
    for (auto s : out.samples()) ASSERT_LE(std::abs(s - expected), 1.0) << v;
  }
  for (std::int32_t v : {-8388608, -100000, 383, 384, 8388607}) {
    AudioClip in = testing::Constant(kDriverFormat, v, 4800);
    AudioClip out = Convert(in, kSourceFormat);
    const double expected = std::clamp(v / 256.0, -32768.0, 32767.0);
    for (auto s : out.samples()) ASSERT_LE(std::abs(s - expected), 1.0) << v;
  }
}

TEST(Convert, DepthReductionRoundsHalfAwayFromZero) {
  AudioFormat mono24{48000, 24, 1};
  AudioFormat mono16{48000, 16, 1};
  AudioClip in(mono24, {383, 384, -384, -383, 128, -128, 8388607, -8388608});
  AudioClip out = Convert(in, mono16);
  std::vector<std::int32_t> expected = {1, 2, -2, -1, 1, -1, 32767, -32768};
  EXPECT_EQ(std::vector<std::int32_t>(out.samples().begin(), out.samples().end()), expected);
}

TEST(Convert, StereoToMonoTakesRoundedMean) {
  AudioFormat stereo{48000, 16, 2};
  AudioFormat mono{48000, 16, 1};
  AudioClip in(stereo, {1, 2, -1, -2, 10, -10, 32767, 32766});
  AudioClip out = Convert(in, mono);
  std::vector<std::int32_t> expected = {2, -2, 0, 32767};
  EXPECT_EQ(std::vector<std::int32_t>(out.samples().begin(), out.samples().end()), expected);
}

TEST(Convert, MonoToStereoDuplicates) {
  AudioFormat mono{48000, 24, 1};
  AudioClip in(mono, {5, -6, 7});
  AudioClip out = Convert(in, kDriverFormat);
  std::vector<std::int32_t> expected = {5, 5, -6, -6, 7, 7};
  EXPECT_EQ(std::vector<std::int32_t>(out.samples().begin(), out.samples().end()), expected);
}

TEST(Convert, SixteenToTwentyFourAndBackIsExact) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    AudioClip clip = testing::RandomClip(rng, 3000);
    if (clip.format().bit_depth != 16) continue;
    AudioFormat wide = clip.format();
    wide.bit_depth = 24;
    EXPECT_EQ(Convert(Convert(clip, wide), clip.format()), clip);
  }
}

TEST(Convert, ConvertingTwiceToDriverFormatIsIdempotent) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    AudioClip clip = testing::RandomClip(rng, 3000);
    AudioClip once = Convert(clip, kDriverFormat);
    EXPECT_EQ(Convert(once, kDriverFormat), once);
  }
}

TEST(Convert, ResampledDurationWithinOneOutputPeriod) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    AudioClip clip = testing::RandomClip(rng, 20000);
    for (const auto& target : {kDriverFormat, kSourceFormat}) {
      AudioClip out = Convert(clip, target);
      EXPECT_LE(std::abs(out.duration_seconds() - clip.duration_seconds()),
                1.0 / target.sample_rate_hz + 1e-12);
    }
  }
}

TEST(Convert, SineRmsPreservedWithinOnePercent) {
  AudioClip in = testing::Sine(kSourceFormat, 440.0, 0.5, 44100);
  AudioClip out = Convert(in, kDriverFormat);
  const double rin = RmsLevel(in);
  EXPECT_NEAR(RmsLevel(out) / rin, 1.0, 0.01);
}

TEST(Convert, MetadataIsCarried) {
  AudioClip in(kSourceFormat, {1, 2, 3}, {{"text", "bonjour"}});
  EXPECT_EQ(Convert(in, kDriverFormat).metadata(), in.metadata());
}

TEST(RmsLevel, SilenceIsZero) {
  EXPECT_EQ(RmsLevel(AudioClip::Silence(kDriverFormat, 4800)), 0.0);
  EXPECT_EQ(RmsLevel(AudioClip::Silence(kDriverFormat, 0)), 0.0);
}

TEST(RmsLevel, FullScaleSquareIsOne) {
  for (const auto& f : {kDriverFormat, kSourceFormat}) {
    std::vector<std::int32_t> s;
    for (int i = 0; i < 1000; ++i) {
      for (int c = 0; c < f.channels; ++c) s.push_back((i / 10) % 2 ? f.max_sample() : f.min_sample());
    }
    EXPECT_DOUBLE_EQ(RmsLevel(AudioClip(f, std::move(s))), 1.0);
  }
}

TEST(RmsLevel, HalfScaleSineMatchesAnalyticValue) {
  // Analytic oracle: RMS of A sin(x) over whole periods is A / sqrt(2).
  const double expected = 0.5 / std::sqrt(2.0);
  AudioClip clip = testing::Sine(kDriverFormat, 1000.0, 0.5, 48000);
  EXPECT_NEAR(RmsLevel(clip), expected, 1e-3);
  EXPECT_NEAR(expected, 0.35355, 1e-5);
}

TEST(RmsLevel, PoolsAllChannels) {
  AudioFormat stereo{48000, 16, 2};
  // One silent channel, one full-scale square: pooled RMS is 1/sqrt(2).
  std::vector<std::int32_t> s;
  for (int i = 0; i < 100; ++i) {
    s.push_back(0);
    s.push_back(i % 2 ? 32767 : -32768);
  }
  EXPECT_NEAR(RmsLevel(AudioClip(stereo, std::move(s))), 1.0 / std::sqrt(2.0), 1e-12);
}

}  // namespace
}  // namespace voicecare::audio
