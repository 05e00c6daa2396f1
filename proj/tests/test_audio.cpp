// test_audio.cpp
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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <vector>

#include "doctest.h"
#include "sonolab/audio.hpp"
#include "sonolab/errors.hpp"

using namespace sonolab;

namespace {

void put_u32(std::vector<uint8_t>& b, uint32_t v) {
  b.push_back(static_cast<uint8_t>(v));
  b.push_back(static_cast<uint8_t>(v >> 8));
  b.push_back(static_cast<uint8_t>(v >> 16));
  b.push_back(static_cast<uint8_t>(v >> 24));
}

void put_u16(std::vector<uint8_t>& b, uint16_t v) {
  b.push_back(static_cast<uint8_t>(v));
  b.push_back(static_cast<uint8_t>(v >> 8));
}

void put_tag(std::vector<uint8_t>& b, const char* tag) {
  b.insert(b.end(), tag, tag + 4);
}

// Hand-assembled RIFF with a PCM fmt chunk; the reader under test never
// sees these helper bytes any other way.
std::vector<uint8_t> wav_pcm16(const std::vector<int16_t>& samples, int rate,
                               int channels, uint16_t format_code = 1,
                               int bits = 16) {
  std::vector<uint8_t> data;
  for (int16_t s : samples) put_u16(data, static_cast<uint16_t>(s));

  std::vector<uint8_t> b;
  put_tag(b, "RIFF");
  put_u32(b, static_cast<uint32_t>(4 + 8 + 16 + 8 + data.size()));
  put_tag(b, "WAVE");
  put_tag(b, "fmt ");
  put_u32(b, 16);
  put_u16(b, format_code);
  put_u16(b, static_cast<uint16_t>(channels));
  put_u32(b, static_cast<uint32_t>(rate));
  put_u32(b, static_cast<uint32_t>(rate * channels * bits / 8));
  put_u16(b, static_cast<uint16_t>(channels * bits / 8));
  put_u16(b, static_cast<uint16_t>(bits));
  put_tag(b, "data");
  put_u32(b, static_cast<uint32_t>(data.size()));
  b.insert(b.end(), data.begin(), data.end());
  return b;
}

}  // namespace

TEST_CASE("one second of 16-bit silence parses to 44100 zeros") {
  const std::vector<int16_t> silence(44100, 0);
  const AudioClip clip = parse_wav(wav_pcm16(silence, 44100, 1));
  CHECK(clip.sample_rate == 44100);
  REQUIRE(clip.samples.size() == 44100);
  for (double s : clip.samples) CHECK(s == 0.0);
}

TEST_CASE("stereo keeps channel 0 only") {
  // Interleaved L/R: left ramps, right is constant junk.
  std::vector<int16_t> frames;
  for (int i = 0; i < 100; ++i) {
    frames.push_back(static_cast<int16_t>(i));
    frames.push_back(static_cast<int16_t>(-7));
  }
  const AudioClip clip = parse_wav(wav_pcm16(frames, 8000, 2));
  REQUIRE(clip.samples.size() == 100);
  for (int i = 0; i < 100; ++i)
    CHECK(clip.samples[static_cast<size_t>(i)] ==
          doctest::Approx(i / 32768.0).epsilon(1e-12));
}

TEST_CASE("full-scale square wave scales by exactly 1/32768") {
  std::vector<int16_t> sq;
  for (int i = 0; i < 64; ++i) sq.push_back(i % 2 ? 32767 : -32767);
  const AudioClip clip = parse_wav(wav_pcm16(sq, 44100, 1));
  double mx = -2.0, mn = 2.0;
  for (double s : clip.samples) {
    mx = std::max(mx, s);
    mn = std::min(mn, s);
  }
  // Bit-exact scaling: 32767 / 32768.
  CHECK(mx == 0.999969482421875);
  CHECK(mn == -0.999969482421875);
}

TEST_CASE("24-bit and compressed formats are UnsupportedEncoding") {
  auto b24 = wav_pcm16({0, 0}, 44100, 1, 1, 24);
  CHECK_THROWS_WITH_AS(parse_wav(b24), doctest::Contains("UnsupportedEncoding"),
                       Error);
  auto mp3 = wav_pcm16({0, 0}, 44100, 1, 0x0055);
  CHECK_THROWS_WITH_AS(parse_wav(mp3), doctest::Contains("UnsupportedEncoding"),
                       Error);
}

TEST_CASE("structural damage is MalformedContainer") {
  std::vector<uint8_t> good = wav_pcm16({1, 2, 3, 4}, 44100, 1);

  SUBCASE("truncated file") {
    good.resize(good.size() - 3);
    CHECK_THROWS_AS(parse_wav(good), Error);
  }
  SUBCASE("bad magic") {
    good[0] = 'X';
    CHECK_THROWS_WITH_AS(parse_wav(good),
                         doctest::Contains("MalformedContainer"), Error);
  }
  SUBCASE("data chunk size beyond the file") {
    // The data chunk's size field sits at byte 40 of this fixed layout.
    std::vector<uint8_t> b = wav_pcm16({1, 2}, 44100, 1);
    b[40] = 0xff;
    b[41] = 0xff;
    CHECK_THROWS_WITH_AS(parse_wav(b),
                         doctest::Contains("MalformedContainer"), Error);
  }
  SUBCASE("empty byte stream") {
    CHECK_THROWS_WITH_AS(parse_wav({}), doctest::Contains("MalformedContainer"),
                         Error);
  }
}

TEST_CASE("float32 write/read round-trips exactly") {
  AudioClip clip;
  clip.sample_rate = 22050;
  for (int i = 0; i < 500; ++i)
    clip.samples.push_back(std::sin(0.01 * i) * 0.8);
  const auto path =
      (std::filesystem::temp_directory_path() / "sonolab_rt.wav").string();
  write_wav(path, clip);
  const AudioClip back = read_wav(path);
  CHECK(back.sample_rate == 22050);
  REQUIRE(back.samples.size() == clip.samples.size());
  for (size_t i = 0; i < clip.samples.size(); ++i)
    CHECK(back.samples[i] ==
          static_cast<double>(static_cast<float>(clip.samples[i])));
  std::filesystem::remove(path);
}

TEST_CASE("slicing adjacent segments concatenates to the original span") {
  AudioClip clip;
  clip.sample_rate = 1000;
  for (int i = 0; i < 1000; ++i) clip.samples.push_back(i * 0.001);

  const auto a = slice(clip, 0.1, 0.37);
  const auto b = slice(clip, 0.37, 0.62);
  const auto whole = slice(clip, 0.1, 0.62);
  std::vector<double> joined = a;
  joined.insert(joined.end(), b.begin(), b.end());
  CHECK(joined == whole);

  // Floor convention at both edges.
  CHECK(a.front() == clip.samples[100]);
  CHECK(a.size() == 270);
}

TEST_CASE("read_wav on a missing path is a structured error") {
  CHECK_THROWS_AS(read_wav("/nonexistent/definitely_missing.wav"), Error);
}
