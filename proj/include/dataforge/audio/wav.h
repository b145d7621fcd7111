// dataforge/audio/wav.h

// Copyright 2026  The DataForge Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABILITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "dataforge/audio/clip.h"
#include "dataforge/audio/ops.h"
#include "dataforge/error.h"

namespace dataforge::audio {

// RIFF/WAVE, 16-bit PCM (format 1) and 32-bit IEEE float (format 3).
// Reading accepts any channel count; writing is mono only.

enum class WavFormat { pcm16, float32 };

namespace detail {

inline std::uint32_t read_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::uint16_t read_u16le(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] |
                                    (static_cast<std::uint16_t>(p[1]) << 8));
}

inline void put_u32le(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
  out.push_back(static_cast<char>((v >> 16) & 0xFF));
  out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

inline void put_u16le(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

}  // namespace detail

inline RawAudio read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open wav file: " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw ParseError("not a RIFF/WAVE file: " + path);

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    const std::uint32_t len = detail::read_u32le(bytes.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (body + len > bytes.size())
      throw ParseError("truncated wav chunk in " + path);
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (len < 16) throw ParseError("short fmt chunk in " + path);
      format = detail::read_u16le(bytes.data() + body);
      channels = detail::read_u16le(bytes.data() + body + 2);
      rate = detail::read_u32le(bytes.data() + body + 4);
      bits = detail::read_u16le(bytes.data() + body + 14);
    } else if (std::memcmp(id, "data", 4) == 0) {
      data = bytes.data() + body;
      data_len = len;
    }
    pos = body + len + (len & 1);  // chunks are word-aligned
  }
  if (data == nullptr || channels == 0 || rate == 0)
    throw ParseError("missing fmt/data chunk in " + path);

  RawAudio raw;
  raw.sample_rate = static_cast<int>(rate);
  raw.channels.assign(channels, {});
  if (format == 1 && bits == 16) {
    const std::size_t frames = data_len / (2u * channels);
    for (auto& ch : raw.channels) ch.reserve(frames);
    for (std::size_t f = 0; f < frames; ++f)
      for (std::uint16_t c = 0; c < channels; ++c) {
        const std::int16_t v = static_cast<std::int16_t>(
            detail::read_u16le(data + (f * channels + c) * 2));
        raw.channels[c].push_back(static_cast<double>(v) / 32768.0);
      }
  } else if (format == 3 && bits == 32) {
    const std::size_t frames = data_len / (4u * channels);
    for (auto& ch : raw.channels) ch.reserve(frames);
    for (std::size_t f = 0; f < frames; ++f)
      for (std::uint16_t c = 0; c < channels; ++c) {
        const std::uint32_t u =
            detail::read_u32le(data + (f * channels + c) * 4);
        float v;
        std::memcpy(&v, &u, 4);
        raw.channels[c].push_back(static_cast<double>(v));
      }
  } else {
    throw ParseError("unsupported wav encoding (format " +
                     std::to_string(format) + ", " + std::to_string(bits) +
                     " bits) in " + path);
  }
  return raw;
}

inline void write_wav(const std::string& path, const AudioClip& clip,
                      WavFormat format = WavFormat::pcm16) {
  const std::uint16_t bytes_per =
      format == WavFormat::pcm16 ? 2 : 4;
  const std::uint32_t data_len =
      static_cast<std::uint32_t>(clip.samples.size()) * bytes_per;
  std::string out;
  out.reserve(44 + data_len);
  out.append("RIFF");
  detail::put_u32le(out, 36 + data_len);
  out.append("WAVE");
  out.append("fmt ");
  detail::put_u32le(out, 16);
  detail::put_u16le(out, format == WavFormat::pcm16 ? 1 : 3);
  detail::put_u16le(out, 1);  // mono
  detail::put_u32le(out, static_cast<std::uint32_t>(clip.sample_rate));
  detail::put_u32le(out,
                    static_cast<std::uint32_t>(clip.sample_rate) * bytes_per);
  detail::put_u16le(out, bytes_per);
  detail::put_u16le(out, static_cast<std::uint16_t>(bytes_per * 8));
  out.append("data");
  detail::put_u32le(out, data_len);
  for (double s : clip.samples) {
    const double clamped = std::clamp(s, -1.0, 1.0);
    if (format == WavFormat::pcm16) {
      const auto v = static_cast<std::int16_t>(
          std::lround(clamped * 32767.0));
      detail::put_u16le(out, static_cast<std::uint16_t>(v));
    } else {
      const float f = static_cast<float>(clamped);
      std::uint32_t u;
      std::memcpy(&u, &f, 4);
      detail::put_u32le(out, u);
    }
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ParseError("cannot write wav file: " + path);
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
}

}  // namespace dataforge::audio
