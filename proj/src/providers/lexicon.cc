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

#include "voicecare/providers/lexicon.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "voicecare/error.h"

namespace voicecare::providers {
namespace {

bool IsWordByte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '\'' || c >= 0x80;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open lexicon " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Splits on '\n', drops '\r', blank lines and '#' comments.
std::vector<std::pair<std::size_t, std::string>> DataLines(std::string_view contents) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= contents.size()) {
    std::size_t end = contents.find('\n', start);
    if (end == std::string_view::npos) end = contents.size();
    std::string line(contents.substr(start, end - start));
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] != '#') out.emplace_back(line_no, std::move(line));
    start = end + 1;
  }
  return out;
}

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::string JoinLowerWords(const std::vector<std::string>& words, std::size_t begin,
                           std::size_t count) {
  std::string key;
  for (std::size_t i = begin; i < begin + count; ++i) {
    if (i > begin) key += ' ';
    key += LowerAscii(words[i]);
  }
  return key;
}

[[noreturn]] void BadLine(std::string_view origin, std::size_t line_no, const std::string& why) {
  throw Error(ErrorCode::kInvalidArgument,
              std::string(origin) + ":" + std::to_string(line_no) + ": " + why);
}

}  // namespace

Tokenized Tokenize(std::string_view text) {
  Tokenized t;
  std::size_t i = 0;
  while (i < text.size() && !IsWordByte(static_cast<unsigned char>(text[i]))) ++i;
  t.leading = std::string(text.substr(0, i));
  while (i < text.size()) {
    std::size_t w = i;
    while (i < text.size() && IsWordByte(static_cast<unsigned char>(text[i]))) ++i;
    t.words.emplace_back(text.substr(w, i - w));
    std::size_t s = i;
    while (i < text.size() && !IsWordByte(static_cast<unsigned char>(text[i]))) ++i;
    t.separators.emplace_back(text.substr(s, i - s));
  }
  return t;
}

std::string LowerAscii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

TranslationLexicon TranslationLexicon::Load(const std::filesystem::path& path) {
  return Parse(ReadFile(path), path.string());
}

TranslationLexicon TranslationLexicon::Parse(std::string_view contents, std::string_view origin) {
  TranslationLexicon lex;
  for (const auto& [line_no, line] : DataLines(contents)) {
    auto fields = SplitTabs(line);
    if (fields.size() != 2 || fields[0].empty()) {
      BadLine(origin, line_no, "expected source<TAB>target");
    }
    lex.Add(fields[0], fields[1]);
  }
  return lex;
}

void TranslationLexicon::Add(const std::string& source, const std::string& target) {
  Tokenized t = Tokenize(source);
  if (t.words.empty()) return;
  std::string key = JoinLowerWords(t.words, 0, t.words.size());
  if (entries_.emplace(key, target).second) {
    ordered_.emplace_back(source, target);
    max_words_ = std::max(max_words_, t.words.size());
  }
}

TranslationLexicon TranslationLexicon::Reversed() const {
  TranslationLexicon rev;
  for (const auto& [source, target] : ordered_) rev.Add(target, source);
  return rev;
}

std::string TranslationLexicon::Apply(std::string_view text) const {
  Tokenized t = Tokenize(text);
  std::string out = t.leading;
  std::size_t i = 0;
  while (i < t.words.size()) {
    std::size_t matched = 0;
    const std::string* replacement = nullptr;
    for (std::size_t len = std::min(max_words_, t.words.size() - i); len >= 1; --len) {
      auto it = entries_.find(JoinLowerWords(t.words, i, len));
      if (it != entries_.end()) {
        matched = len;
        replacement = &it->second;
        break;
      }
    }
    if (matched == 0) {
      out += t.words[i];
      out += t.separators[i];
      ++i;
      continue;
    }
    std::string rep = *replacement;
    const char first = t.words[i][0];
    if (first >= 'A' && first <= 'Z' && !rep.empty() && rep[0] >= 'a' && rep[0] <= 'z') {
      rep[0] = static_cast<char>(rep[0] - 'a' + 'A');
    }
    out += rep;
    out += t.separators[i + matched - 1];
    i += matched;
  }
  return out;
}

EmotionLexicon EmotionLexicon::Load(const std::filesystem::path& path) {
  return Parse(ReadFile(path), path.string());
}

EmotionLexicon EmotionLexicon::Parse(std::string_view contents, std::string_view origin) {
  EmotionLexicon lex;
  for (const auto& [line_no, line] : DataLines(contents)) {
    auto fields = SplitTabs(line);
    if (fields.size() != 3 || fields[0].empty()) {
      BadLine(origin, line_no, "expected token<TAB>emotion<TAB>weight");
    }
    int field = -1;
    for (std::size_t k = 0; k < kEmotionNames.size(); ++k) {
      if (fields[1] == kEmotionNames[k]) field = static_cast<int>(k);
    }
    if (fields[1] == "sentiment") field = 5;
    if (field < 0) BadLine(origin, line_no, "unknown emotion '" + fields[1] + "'");
    double weight = 0.0;
    try {
      std::size_t used = 0;
      weight = std::stod(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      BadLine(origin, line_no, "bad weight '" + fields[2] + "'");
    }
    lex.weights_.emplace(LowerAscii(fields[0]), std::make_pair(field, weight));
  }
  return lex;
}

EmotionScores EmotionLexicon::Score(std::string_view text) const {
  double sums[6] = {0, 0, 0, 0, 0, 0};
  for (const auto& word : Tokenize(text).words) {
    auto [lo, hi] = weights_.equal_range(LowerAscii(word));
    for (auto it = lo; it != hi; ++it) sums[it->second.first] += it->second.second;
  }
  double total = 0.0;
  for (int k = 0; k < 5; ++k) {
    sums[k] = std::max(0.0, sums[k]);
    total += sums[k];
  }
  if (total > 1.0) {
    for (int k = 0; k < 5; ++k) sums[k] /= total;
  }
  EmotionScores s;
  s.joy = sums[0];
  s.anger = sums[1];
  s.sadness = sums[2];
  s.fear = sums[3];
  s.disgust = sums[4];
  s.sentiment = std::clamp(sums[5], -1.0, 1.0);
  return s;
}

}  // namespace voicecare::providers
