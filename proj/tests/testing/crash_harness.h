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


// Fault injection over Store::SaveSession: interrupts the save at every step
// and classifies what a fresh store handle sees afterwards.

#ifndef VOICECARE_TESTS_TESTING_CRASH_HARNESS_H_
#define VOICECARE_TESTS_TESTING_CRASH_HARNESS_H_

#include <algorithm>
#include <string>
#include <vector>

#include "fixtures.h"
#include "voicecare/audio/wav.h"
#include "voicecare/error.h"
#include "voicecare/store/store.h"

namespace voicecare::testing {

struct SimulatedCrash {};

enum class PostCrashState { kPreSave, kFullySaved, kMixed };

struct CrashOutcome {
  std::string step;
  PostCrashState state;
  bool resave_ok;  // the same record saves cleanly afterwards
};

inline std::vector<std::string> SaveSteps(const records::SessionRecord& record,
                                          const std::map<std::string, audio::AudioClip>& clips) {
  TempDir dir;
  store::Store s(dir.path());
  std::vector<std::string> steps;
  s.SetFaultHook([&](std::string_view step) { steps.emplace_back(step); });
  s.SaveSession(record, clips);
  return steps;
}

// What a fresh handle on `root` reports about `record` given the sessions
// that existed before the save.
inline PostCrashState Classify(const std::filesystem::path& root,
                               const records::SessionRecord& record,
                               const std::map<std::string, audio::AudioClip>& clips,
                               const std::vector<std::string>& before_ids) {
  store::Store fresh(root);
  std::vector<std::string> ids;
  for (const auto& s : fresh.ListSessions()) ids.push_back(s.id);
  std::vector<std::string> with_record = before_ids;
  with_record.push_back(record.id);
  std::sort(ids.begin(), ids.end());
  std::sort(with_record.begin(), with_record.end());
  auto sorted_before = before_ids;
  std::sort(sorted_before.begin(), sorted_before.end());

  bool loadable = false;
  try {
    fresh.LoadSession(record.id);
    loadable = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotFound) return PostCrashState::kMixed;
  }
  if (ids == sorted_before && !loadable && !fresh.HasSession(record.id)) {
    return PostCrashState::kPreSave;
  }
  if (ids == with_record && loadable && fresh.LoadSession(record.id) == record) {
    for (const auto& [name, clip] : clips) {
      try {
        if (audio::ReadWavFile(fresh.AudioPath(record.id, name)) != clip) {
          return PostCrashState::kMixed;
        }
      } catch (const Error&) {
        return PostCrashState::kMixed;
      }
    }
    return PostCrashState::kFullySaved;
  }
  return PostCrashState::kMixed;
}

// Crashes a save at each step in turn, on a store that already holds
// `existing` other sessions.
inline std::vector<CrashOutcome> RunCrashMatrix(int existing = 2) {
  const auto clips = FigureFourClips();
  const auto record = FigureFourRecord("s-target");
  std::vector<CrashOutcome> outcomes;
  for (const auto& crash_at : SaveSteps(record, clips)) {
    TempDir dir;
    std::vector<std::string> before;
    {
      store::Store s(dir.path());
      for (int i = 0; i < existing; ++i) {
        auto other = FigureFourRecord("s-other-" + std::to_string(i));
        s.SaveSession(other, clips);
        before.push_back(other.id);
      }
    }
    {
      store::Store s(dir.path());
      s.SetFaultHook([&](std::string_view step) {
        if (step == crash_at) throw SimulatedCrash{};
      });
      try {
        s.SaveSession(record, clips);
      } catch (const SimulatedCrash&) {
      }
    }
    CrashOutcome outcome{crash_at, Classify(dir.path(), record, clips, before), false};
    {
      store::Store s(dir.path());
      try {
        s.SaveSession(record, clips);
        outcome.resave_ok = outcome.state == PostCrashState::kPreSave &&
                            Classify(dir.path(), record, clips, before) ==
                                PostCrashState::kFullySaved;
      } catch (const Error& e) {
        // A published session must refuse a second save.
        outcome.resave_ok = outcome.state == PostCrashState::kFullySaved &&
                            e.code() == ErrorCode::kAlreadyExists;
      }
    }
    outcomes.push_back(outcome);
  }
  return outcomes;
}

}  // namespace voicecare::testing

#endif  // VOICECARE_TESTS_TESTING_CRASH_HARNESS_H_
