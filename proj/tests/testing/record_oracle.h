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

// Reference model of the record loop over voiced/silent patterns, plus a
// scripted chunk source that plays such a pattern.

#ifndef VOICECARE_TESTS_TESTING_RECORD_ORACLE_H_
#define VOICECARE_TESTS_TESTING_RECORD_ORACLE_H_

#include <cstddef>
#include <vector>

#include "audio_generators.h"
#include "voicecare/capture/record.h"

namespace voicecare::testing {

struct OracleTrace {
  bool answered = false;
  bool truncated = false;
  std::size_t voiced_chunks = 0;
  std::size_t consumed = 0;
};

// Chunks past the end of `pattern` count as silent.
inline OracleTrace ReferenceRecordLoop(const std::vector<bool>& voiced_pattern,
                                       std::size_t max_chunks) {
  auto voiced = [&](std::size_t i) { return i < voiced_pattern.size() && voiced_pattern[i]; };
  OracleTrace t;
  t.consumed = 1;
  if (!voiced(0)) return t;
  t.answered = true;
  t.voiced_chunks = 1;
  while (t.voiced_chunks < max_chunks) {
    if (!voiced(t.consumed++)) return t;
    ++t.voiced_chunks;
  }
  t.truncated = true;
  return t;
}

// Plays a voiced/silent pattern: voiced chunks are a 440 Hz tone at 0.3 of
// full scale, silent chunks are digital zero. Silent forever past the end.
class PatternChunkSource : public capture::ChunkSource {
 public:
  PatternChunkSource(std::vector<bool> pattern, std::size_t chunk_frames,
                     audio::AudioFormat format = audio::kDriverFormat)
      : pattern_(std::move(pattern)),
        voiced_(Sine(format, 440.0, 0.3, chunk_frames)),
        silent_(audio::AudioClip::Silence(format, chunk_frames)) {}

  audio::AudioClip NextChunk() override {
    const std::size_t i = pulled_++;
    return i < pattern_.size() && pattern_[i] ? voiced_ : silent_;
  }
  std::size_t pulled() const { return pulled_; }

 private:
  std::vector<bool> pattern_;
  audio::AudioClip voiced_;
  audio::AudioClip silent_;
  std::size_t pulled_ = 0;
};

}  // namespace voicecare::testing

#endif  // VOICECARE_TESTS_TESTING_RECORD_ORACLE_H_
