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

#include "voicecare/gateway/bench.h"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace voicecare::gateway {
namespace {

constexpr std::size_t kStages = std::size(session::kStageNames);

std::string Cell(const Stats& s) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f±%.3f", s.mean * 1e3, s.stddev * 1e3);
  return buf;
}

// Pads by code points so '±' counts as one column.
std::string Pad(const std::string& s, std::size_t width) {
  std::size_t cps = 0;
  for (unsigned char c : s) cps += (c & 0xC0) != 0x80;
  return cps >= width ? s : std::string(width - cps, ' ') + s;
}

}  // namespace

Stats Summarize(std::span<const double> samples) {
  Stats s;
  if (samples.empty()) return s;
  for (double v : samples) s.mean += v;
  s.mean /= static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double ss = 0;
    for (double v : samples) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(samples.size() - 1));
  }
  return s;
}

Stats BenchRow::stage(std::size_t k) const {
  std::vector<double> v;
  for (const auto& t : samples) v.push_back(session::StageValues(t)[k]);
  return Summarize(v);
}

Stats BenchRow::total() const {
  std::vector<double> v;
  for (const auto& t : samples) v.push_back(t.total());
  return Summarize(v);
}

BenchReport RunBench(session::SessionEngine& engine, const questionnaire::Questionnaire& q,
                     const AudioIoFactory& make_io, int repetitions,
                     const std::string& device_id) {
  if (repetitions < 1) throw Error(ErrorCode::kInvalidArgument, "repetitions must be >= 1");
  BenchReport report;
  report.repetitions = repetitions;
  for (const auto& question : q.questions) {
    report.rows.push_back({question.id, question.position, {}});
  }
  for (int rep = 0; rep < repetitions; ++rep) {
    auto io = make_io();
    const auto result = engine.Run(q, *io, device_id);
    for (const auto& qt : result.questions) {
      report.rows.at(static_cast<std::size_t>(qt.position)).samples.push_back(qt.stages);
    }
  }
  return report;
}

std::string FormatTable(const BenchReport& report) {
  constexpr std::size_t kWidth = 18;
  std::ostringstream os;
  os << "stage times in ms, mean±stddev over " << report.repetitions << " run(s)\n";
  os << Pad("question", 10);
  for (const char* name : session::kStageNames) os << Pad(name, kWidth);
  os << Pad("total", kWidth) << '\n';
  for (const auto& row : report.rows) {
    os << Pad(row.question_id, 10);
    for (std::size_t k = 0; k < kStages; ++k) os << Pad(Cell(row.stage(k)), kWidth);
    os << Pad(Cell(row.total()), kWidth) << '\n';
  }
  return os.str();
}

std::string FormatCsv(const BenchReport& report) {
  std::ostringstream os;
  os << "question_id,position,samples";
  for (const char* name : session::kStageNames) os << ',' << name << "_mean," << name << "_stddev";
  os << ",total_mean,total_stddev\n";
  char buf[32];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.9f", v);
    return std::string(buf);
  };
  for (const auto& row : report.rows) {
    os << row.question_id << ',' << row.position << ',' << row.samples.size();
    for (std::size_t k = 0; k < kStages; ++k) {
      const Stats s = row.stage(k);
      os << ',' << num(s.mean) << ',' << num(s.stddev);
    }
    const Stats t = row.total();
    os << ',' << num(t.mean) << ',' << num(t.stddev) << '\n';
  }
  return os.str();
}

}  // namespace voicecare::gateway
