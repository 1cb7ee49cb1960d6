// sedecomp/wav.hpp

// Copyright 2026  The sedecomp Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sedecomp/error.hpp"
#include "sedecomp/signal.hpp"

namespace sedecomp {

enum class WavEncoding { kPcm16, kFloat32 };

inline std::string_view WavEncodingName(WavEncoding e) {
  return e == WavEncoding::kPcm16 ? "pcm16" : "float32";
}

inline WavEncoding ParseWavEncoding(std::string_view name) {
  if (name == "pcm16") return WavEncoding::kPcm16;
  if (name == "float32") return WavEncoding::kFloat32;
  throw ValidationError("unknown WAV encoding '" + std::string(name) +
                        "' (expected pcm16 or float32)");
}

struct WavFile {
  Signal signal;
  WavEncoding encoding;
};

struct WavWriteStats {
  std::size_t clipped = 0;  // PCM16 samples saturated to [-32768, 32767]
};

namespace wav_internal {

inline std::uint16_t U16(const std::uint8_t *p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
inline std::uint32_t U32(const std::uint8_t *p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}
inline void Put16(std::vector<std::uint8_t> &out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}
inline void Put32(std::vector<std::uint8_t> &out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}
inline void PutTag(std::vector<std::uint8_t> &out, const char *tag) {
  out.insert(out.end(), tag, tag + 4);
}

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

}  // namespace wav_internal

/// Decodes a RIFF/WAVE byte buffer. Only mono PCM16 and IEEE float32 are
/// accepted; PCM16 maps to [-1, 1) by division by 32768.
inline WavFile DecodeWav(std::span<const std::uint8_t> bytes,
                         const std::string &name = "<memory>") {
  using namespace wav_internal;
  auto malformed = [&](const std::string &why) {
    return IoError(name + ": malformed WAV: " + why);
  };
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw malformed("missing RIFF/WAVE header");
  }
  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const std::uint8_t *data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t *chunk = bytes.data() + pos;
    const std::uint32_t size = U32(chunk + 4);
    if (size > bytes.size() - pos - 8) throw malformed("truncated chunk");
    const std::uint8_t *body = chunk + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw malformed("fmt chunk too short");
      format = U16(body);
      channels = U16(body + 2);
      rate = U32(body + 4);
      bits = U16(body + 14);
      if (format == kFormatExtensible) {
        if (size < 40) throw malformed("extensible fmt chunk too short");
        format = U16(body + 24);  // first two bytes of the subformat GUID
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = body;
      data_size = size;
    }
    pos += 8 + size + (size & 1u);
  }
  if (!have_fmt) throw malformed("no fmt chunk");
  if (data == nullptr) throw malformed("no data chunk");
  if (channels != 1) {
    throw ValidationError(name + ": only mono WAV is supported, got " +
                          std::to_string(channels) + " channels");
  }
  if (rate == 0) throw malformed("zero sample rate");

  WavEncoding enc;
  std::size_t width;
  if (format == kFormatPcm && bits == 16) {
    enc = WavEncoding::kPcm16;
    width = 2;
  } else if (format == kFormatFloat && bits == 32) {
    enc = WavEncoding::kFloat32;
    width = 4;
  } else {
    throw ValidationError(name + ": unsupported WAV encoding (format " +
                          std::to_string(format) + ", " + std::to_string(bits) +
                          " bits); expected PCM16 or float32");
  }
  if (data_size % width != 0) throw malformed("partial sample in data chunk");
  const std::size_t n = data_size / width;
  if (n == 0) throw ValidationError(name + ": WAV has no samples");

  std::vector<double> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (enc == WavEncoding::kPcm16) {
      const auto v = static_cast<std::int16_t>(U16(data + 2 * i));
      samples[i] = static_cast<double>(v) / 32768.0;
    } else {
      samples[i] = static_cast<double>(std::bit_cast<float>(U32(data + 4 * i)));
    }
  }
  try {
    return WavFile{Signal(std::move(samples), static_cast<int>(rate)), enc};
  } catch (const ValidationError &e) {
    throw ValidationError(name + ": " + e.what());
  }
}

/// Encodes a signal as a canonical 44-byte-header WAV. PCM16 values outside
/// the representable range saturate and are counted in `stats`.
inline std::vector<std::uint8_t> EncodeWav(const Signal &x, WavEncoding enc,
                                           WavWriteStats *stats = nullptr) {
  using namespace wav_internal;
  const std::uint16_t width = enc == WavEncoding::kPcm16 ? 2 : 4;
  const auto data_size = static_cast<std::uint32_t>(x.size() * width);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size);
  PutTag(out, "RIFF");
  Put32(out, 36 + data_size);
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  Put32(out, 16);
  Put16(out, enc == WavEncoding::kPcm16 ? kFormatPcm : kFormatFloat);
  Put16(out, 1);
  Put32(out, static_cast<std::uint32_t>(x.sample_rate()));
  Put32(out, static_cast<std::uint32_t>(x.sample_rate()) * width);
  Put16(out, width);
  Put16(out, static_cast<std::uint16_t>(width * 8));
  PutTag(out, "data");
  Put32(out, data_size);

  std::size_t clipped = 0;
  for (const double v : x.samples()) {
    if (enc == WavEncoding::kPcm16) {
      double q = std::nearbyint(v * 32768.0);
      if (q > 32767.0 || q < -32768.0) {
        ++clipped;
        q = std::clamp(q, -32768.0, 32767.0);
      }
      Put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
    } else {
      Put32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
    }
  }
  if (stats != nullptr) stats->clipped += clipped;
  return out;
}

inline WavFile ReadWavFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
  return DecodeWav(bytes, path.string());
}

inline Signal ReadWav(const std::filesystem::path &path) {
  return ReadWavFile(path).signal;
}

inline WavWriteStats WriteWav(const std::filesystem::path &path, const Signal &x,
                              WavEncoding enc = WavEncoding::kFloat32) {
  WavWriteStats stats;
  const auto bytes = EncodeWav(x, enc, &stats);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failure on '" + path.string() + "'");
  return stats;
}

/// Trims every signal to the shortest length. Only the I/O layer offers
/// this; the numeric modules reject mismatched lengths.
inline void TrimToShortest(std::vector<Signal *> signals) {
  std::size_t shortest = std::numeric_limits<std::size_t>::max();
  for (const Signal *s : signals) shortest = std::min(shortest, s->size());
  for (Signal *s : signals) {
    if (s->size() != shortest) {
      std::vector<double> v(s->samples().begin(),
                            s->samples().begin() + static_cast<std::ptrdiff_t>(shortest));
      *s = Signal(std::move(v), s->sample_rate());
    }
  }
}

}  // namespace sedecomp
