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

// Per-question stage timing over repeated scripted sessions.

#ifndef VOICECARE_GATEWAY_BENCH_H_
#define VOICECARE_GATEWAY_BENCH_H_

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "voicecare/session/session.h"

namespace voicecare::gateway {

struct Stats {
  double mean = 0;
  double stddev = 0;  // sample standard deviation; 0 for a single sample
};

Stats Summarize(std::span<const double> samples);

struct BenchRow {
  std::string question_id;
  int position = 0;
  std::vector<session::StageTimings> samples;  // one per repetition

  Stats stage(std::size_t k) const;  // k indexes kStageNames
  Stats total() const;
};

struct BenchReport {
  int repetitions = 0;
  std::vector<BenchRow> rows;
};

// Fresh audio for every repetition.
using AudioIoFactory = std::function<std::unique_ptr<session::AudioIo>()>;

// Runs `repetitions` sessions and collects question timings. Session
// errors propagate.
BenchReport RunBench(session::SessionEngine& engine, const questionnaire::Questionnaire& q,
                     const AudioIoFactory& make_io, int repetitions,
                     const std::string& device_id = "bench");

// Fixed-width table, times in milliseconds as mean±stddev.
std::string FormatTable(const BenchReport& report);
// Header plus one line per question; seconds.
std::string FormatCsv(const BenchReport& report);

}  // namespace voicecare::gateway

#endif  // VOICECARE_GATEWAY_BENCH_H_
