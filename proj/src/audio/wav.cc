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

#include "voicecare/audio/wav.h"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>

#include "voicecare/error.h"

namespace voicecare::audio {
namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;
constexpr std::size_t kFmtChunkSize = 16;
// Bytes 2..15 of the KSDATAFORMAT_SUBTYPE_PCM GUID; the first two bytes
// carry the format tag.
constexpr std::array<std::uint8_t, 14> kPcmGuidTail = {
    0x00, 0x00, 0x00, 0x00, 0x10, 0x00, 0x80, 0x00, 0x00, 0xAA, 0x00, 0x38, 0x9B, 0x71};

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedFile, what);
}

[[noreturn]] void Unsupported(const std::string& what) {
  throw Error(ErrorCode::kUnsupportedFormat, what);
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::size_t position() const { return pos_; }

  std::span<const std::uint8_t> Take(std::size_t n, const char* what) {
    if (remaining() < n) Malformed(std::string("truncated ") + what);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint16_t U16(const char* what) {
    auto b = Take(2, what);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  }
  std::uint32_t U32(const char* what) {
    auto b = Take(4, what);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
  }
  void Skip(std::size_t n) { pos_ += std::min(n, remaining()); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

bool IdEquals(std::span<const std::uint8_t> id, const char* expected) {
  return std::memcmp(id.data(), expected, 4) == 0;
}

class Writer {
 public:
  explicit Writer(std::size_t reserve) { out_.reserve(reserve); }

  void Id(const char* id) { out_.insert(out_.end(), id, id + 4); }
  void U16(std::uint16_t v) {
    out_.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  void U32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void Sample(std::int32_t s, int bytes) {
    const auto u = static_cast<std::uint32_t>(s);
    for (int i = 0; i < bytes; ++i) out_.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
  }
  void Bytes(std::string_view s) { out_.insert(out_.end(), s.begin(), s.end()); }
  void PadIfOdd(std::size_t chunk_size) {
    if (chunk_size % 2 != 0) out_.push_back(0);
  }

  std::vector<std::uint8_t> Release() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

std::string Escape(std::string_view in) {
  std::string out;
  out.reserve(in.size());
  for (char c : in) {
    switch (c) {
      case '\\':
        out += "\\\\";
        break;
      case '=':
        out += "\\=";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        out += c;
    }
  }
  return out;
}

struct FmtChunk {
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
  std::uint16_t block_align = 0;
};

FmtChunk ParseFmt(std::span<const std::uint8_t> body) {
  if (body.size() < kFmtChunkSize) Malformed("fmt chunk shorter than 16 bytes");
  Reader r(body);
  auto tag = r.U16("fmt");
  FmtChunk fmt;
  fmt.channels = r.U16("fmt");
  fmt.sample_rate = r.U32("fmt");
  r.U32("fmt");  // byte rate, recomputed from the other fields
  fmt.block_align = r.U16("fmt");
  fmt.bits = r.U16("fmt");
  if (tag == kFormatExtensible) {
    if (body.size() < 40) Malformed("extensible fmt chunk shorter than 40 bytes");
    r.Skip(2 + 2 + 4);  // cbSize, valid bits, channel mask
    auto guid = r.Take(16, "fmt");
    const bool pcm = guid[0] == 0x01 && guid[1] == 0x00 &&
                     std::equal(kPcmGuidTail.begin(), kPcmGuidTail.end(), guid.begin() + 2);
    if (!pcm) Unsupported("extensible sub-format is not integer PCM");
  } else if (tag != kFormatPcm) {
    Unsupported("format tag " + std::to_string(tag) + " is not integer PCM");
  }
  if (fmt.bits != 16 && fmt.bits != 24) {
    Unsupported("bit depth " + std::to_string(fmt.bits));
  }
  if (fmt.channels != 1 && fmt.channels != 2) {
    Unsupported(std::to_string(fmt.channels) + " channels");
  }
  if (fmt.sample_rate == 0 || fmt.sample_rate > 0x7FFFFFFF) {
    Malformed("sample rate " + std::to_string(fmt.sample_rate));
  }
  if (fmt.block_align != fmt.channels * (fmt.bits / 8)) {
    Malformed("block align " + std::to_string(fmt.block_align) +
              " does not match channels and bit depth");
  }
  return fmt;
}

}  // namespace

std::string EncodeMetadata(const Metadata& metadata) {
  std::string out;
  for (const auto& [key, value] : metadata) {
    out += Escape(key);
    out += '=';
    out += Escape(value);
    out += '\n';
  }
  return out;
}

Metadata DecodeMetadata(std::string_view payload) {
  Metadata out;
  std::string key;
  std::string value;
  std::string* field = &key;
  bool escaped = false;
  bool seen_separator = false;
  for (char c : payload) {
    if (escaped) {
      switch (c) {
        case 'n':
          *field += '\n';
          break;
        case 'r':
          *field += '\r';
          break;
        default:
          *field += c;
      }
      escaped = false;
      continue;
    }
    if (c == '\\') {
      escaped = true;
    } else if (c == '=' && !seen_separator) {
      seen_separator = true;
      field = &value;
    } else if (c == '\n') {
      if (!seen_separator || key.empty()) Malformed("metadata line without key=value");
      out[key] = value;
      key.clear();
      value.clear();
      field = &key;
      seen_separator = false;
    } else {
      *field += c;
    }
  }
  if (escaped || seen_separator || !key.empty()) Malformed("unterminated metadata line");
  return out;
}

AudioClip ParseWav(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  if (bytes.size() < 12) Malformed("file shorter than RIFF header");
  if (!IdEquals(r.Take(4, "header"), "RIFF")) Malformed("missing RIFF magic");
  const std::uint32_t riff_size = r.U32("header");
  if (!IdEquals(r.Take(4, "header"), "WAVE")) Malformed("missing WAVE magic");
  if (riff_size < 4 || static_cast<std::size_t>(riff_size) + 8 > bytes.size()) {
    Malformed("RIFF size " + std::to_string(riff_size) + " exceeds file size " +
              std::to_string(bytes.size()));
  }
  const std::size_t end = static_cast<std::size_t>(riff_size) + 8;

  std::optional<FmtChunk> fmt;
  std::optional<std::span<const std::uint8_t>> data;
  Metadata metadata;
  while (r.position() + 8 <= end) {
    auto id = r.Take(4, "chunk header");
    const std::uint32_t size = r.U32("chunk header");
    if (r.position() + size > end) {
      Malformed("chunk '" + std::string(id.begin(), id.end()) + "' of " +
                std::to_string(size) + " bytes runs past the end of the file");
    }
    auto body = r.Take(size, "chunk body");
    if (size % 2 != 0 && r.position() < end) r.Skip(1);
    if (IdEquals(id, "fmt ")) {
      fmt = ParseFmt(body);
    } else if (IdEquals(id, "data")) {
      data = body;
    } else if (IdEquals(id, kMetadataChunkId)) {
      metadata = DecodeMetadata(
          std::string_view(reinterpret_cast<const char*>(body.data()), body.size()));
    }
  }
  if (r.position() < end) Malformed("trailing partial chunk header");
  if (!fmt) Malformed("missing fmt chunk");
  if (!data) Malformed("missing data chunk");
  if (data->size() % fmt->block_align != 0) {
    Malformed("data size " + std::to_string(data->size()) +
              " is not a multiple of block align " + std::to_string(fmt->block_align));
  }

  const int width = fmt->bits / 8;
  std::vector<std::int32_t> samples(data->size() / width);
  const std::uint8_t* p = data->data();
  for (auto& s : samples) {
    if (width == 2) {
      s = static_cast<std::int16_t>(p[0] | (p[1] << 8));
    } else {
      std::uint32_t u = p[0] | (p[1] << 8) | (static_cast<std::uint32_t>(p[2]) << 16);
      if (u & 0x800000u) u |= 0xFF000000u;
      s = static_cast<std::int32_t>(u);
    }
    p += width;
  }
  AudioFormat format{static_cast<int>(fmt->sample_rate), fmt->bits, fmt->channels};
  return AudioClip(format, std::move(samples), std::move(metadata));
}

std::vector<std::uint8_t> WriteWav(const AudioClip& clip) {
  const auto& f = clip.format();
  const int width = f.bytes_per_sample();
  const std::size_t data_size = clip.samples().size() * width;
  const std::string meta = EncodeMetadata(clip.metadata());
  std::size_t riff_size = 4 + (8 + kFmtChunkSize) + (8 + data_size + data_size % 2);
  if (!meta.empty()) riff_size += 8 + meta.size() + meta.size() % 2;
  if (riff_size > 0xFFFFFFFFu) {
    throw Error(ErrorCode::kInvalidArgument, "clip too large for a RIFF file");
  }

  Writer w(riff_size + 8);
  w.Id("RIFF");
  w.U32(static_cast<std::uint32_t>(riff_size));
  w.Id("WAVE");
  w.Id("fmt ");
  w.U32(kFmtChunkSize);
  w.U16(kFormatPcm);
  w.U16(static_cast<std::uint16_t>(f.channels));
  w.U32(static_cast<std::uint32_t>(f.sample_rate_hz));
  w.U32(static_cast<std::uint32_t>(f.sample_rate_hz * f.block_align()));
  w.U16(static_cast<std::uint16_t>(f.block_align()));
  w.U16(static_cast<std::uint16_t>(f.bit_depth));
  w.Id("data");
  w.U32(static_cast<std::uint32_t>(data_size));
  for (auto s : clip.samples()) w.Sample(s, width);
  w.PadIfOdd(data_size);
  if (!meta.empty()) {
    w.Id(kMetadataChunkId);
    w.U32(static_cast<std::uint32_t>(meta.size()));
    w.Bytes(meta);
    w.PadIfOdd(meta.size());
  }
  return w.Release();
}

AudioClip ReadWavFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return ParseWav(bytes);
}

void WriteWavFile(const AudioClip& clip, const std::filesystem::path& path) {
  const auto bytes = WriteWav(clip);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kStorageFailure, "cannot write " + path.string());
}

}  // namespace voicecare::audio
