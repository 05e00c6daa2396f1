// sonolab/audio.cpp
//
// Copyright 2026  The Sonolab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sonolab/audio.hpp"

#include <cstring>
#include <fstream>

#include "sonolab/errors.hpp"

namespace sonolab {

namespace {

uint32_t read_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t read_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 24) & 0xff));
}

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
}

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xfffe;

}  // namespace

AudioClip parse_wav(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error(Errc::malformed_container, "not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  const uint8_t* data = nullptr;
  uint32_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const uint8_t* hdr = bytes.data() + pos;
    uint32_t chunk_len = read_u32(hdr + 4);
    std::size_t body = pos + 8;
    if (body + chunk_len > bytes.size()) {
      throw Error(Errc::malformed_container,
                  "chunk extends past end of file at offset " +
                      std::to_string(pos));
    }
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (chunk_len < 16)
        throw Error(Errc::malformed_container, "fmt chunk too small");
      const uint8_t* f = bytes.data() + body;
      format = read_u16(f);
      channels = read_u16(f + 2);
      rate = read_u32(f + 4);
      bits = read_u16(f + 14);
      if (format == kFormatExtensible && chunk_len >= 40) {
        // Subformat GUID starts with the effective format code.
        format = read_u16(f + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data = bytes.data() + body;
      data_len = chunk_len;
    }
    pos = body + chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr)
    throw Error(Errc::malformed_container, "missing fmt or data chunk");
  if (channels < 1 || channels > 2)
    throw Error(Errc::unsupported_encoding,
                std::to_string(channels) + " channels (want 1 or 2)");
  if (rate == 0)
    throw Error(Errc::malformed_container, "zero sample rate");

  const bool pcm16 = (format == kFormatPcm && bits == 16);
  const bool f32 = (format == kFormatFloat && bits == 32);
  if (!pcm16 && !f32)
    throw Error(Errc::unsupported_encoding,
                "format " + std::to_string(format) + "/" +
                    std::to_string(bits) + "-bit (want PCM16 or float32)");

  const std::size_t bytes_per_sample = pcm16 ? 2 : 4;
  const std::size_t frame_bytes = bytes_per_sample * channels;
  if (data_len % frame_bytes != 0)
    throw Error(Errc::malformed_container, "data chunk not frame-aligned");
  const std::size_t n_frames = data_len / frame_bytes;
  if (n_frames == 0)
    throw Error(Errc::malformed_container, "empty data chunk");

  AudioClip clip;
  clip.sample_rate = static_cast<int>(rate);
  clip.samples.resize(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i) {
    const uint8_t* p = data + i * frame_bytes;  // channel 0 leads each frame
    if (pcm16) {
      int16_t v = static_cast<int16_t>(read_u16(p));
      clip.samples[i] = static_cast<double>(v) / 32768.0;
    } else {
      float v;
      std::memcpy(&v, p, 4);
      clip.samples[i] = static_cast<double>(v);
    }
  }
  return clip;
}

AudioClip read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(Errc::malformed_container, "cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  return parse_wav(bytes);
}

void write_wav(const std::string& path, const AudioClip& clip) {
  const uint32_t n = static_cast<uint32_t>(clip.samples.size());
  const uint32_t data_len = n * 4;
  std::vector<uint8_t> out;
  out.reserve(58 + data_len);

  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, 4 + 8 + 16 + 8 + data_len);
  out.insert(out.end(), {'W', 'A', 'V', 'E'});

  out.insert(out.end(), {'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, kFormatFloat);
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<uint32_t>(clip.sample_rate));
  put_u32(out, static_cast<uint32_t>(clip.sample_rate) * 4);
  put_u16(out, 4);
  put_u16(out, 32);

  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, data_len);
  for (uint32_t i = 0; i < n; ++i) {
    float v = static_cast<float>(clip.samples[i]);
    uint8_t b[4];
    std::memcpy(b, &v, 4);
    out.insert(out.end(), b, b + 4);
  }

  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw Error(Errc::malformed_container, "cannot write " + path);
  f.write(reinterpret_cast<const char*>(out.data()),
          static_cast<std::streamsize>(out.size()));
}

std::vector<double> slice(const AudioClip& clip, double start_s, double end_s) {
  std::size_t a = sample_index(start_s, clip.sample_rate);
  std::size_t b = sample_index(end_s, clip.sample_rate);
  if (a > clip.samples.size()) a = clip.samples.size();
  if (b > clip.samples.size()) b = clip.samples.size();
  if (b < a) b = a;
  return std::vector<double>(clip.samples.begin() + a, clip.samples.begin() + b);
}

}  // namespace sonolab
