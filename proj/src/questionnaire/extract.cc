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


#include <string>

#include "voicecare/questionnaire/questionnaire.h"

namespace voicecare::questionnaire {
namespace {

bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

// Trims and collapses whitespace runs to single spaces.
std::string Normalize(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

// True when a blank line starts at `i` (a '\n' followed by optional
// horizontal whitespace and another '\n'). Sets `end` past it.
bool ParagraphBreakAt(std::string_view text, std::size_t i, std::size_t& end) {
  if (text[i] != '\n') return false;
  std::size_t j = i + 1;
  while (j < text.size() && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r' ||
                             text[j] == '\f' || text[j] == '\v')) {
    ++j;
  }
  if (j >= text.size() || text[j] != '\n') return false;
  end = j + 1;
  return true;
}

}  // namespace

std::vector<Question> ExtractQuestions(std::string_view document) {
  std::vector<Question> out;
  std::size_t start = 0;
  std::size_t i = 0;
  auto emit = [&](std::size_t end_inclusive) {
    std::string body = Normalize(document.substr(start, end_inclusive + 1 - start));
    if (body.size() > 1) {
      const int pos = static_cast<int>(out.size());
      out.push_back({"q" + std::to_string(pos + 1), std::move(body), pos});
    }
  };
  while (i < document.size()) {
    const char c = document[i];
    std::size_t after = 0;
    if (c == '?') {
      emit(i);
      start = ++i;
    } else if (c == '.' || c == '!') {
      start = ++i;
    } else if (ParagraphBreakAt(document, i, after)) {
      start = i = after;
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace voicecare::questionnaire
