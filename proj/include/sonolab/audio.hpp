// sonolab/audio.hpp
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

#ifndef SONOLAB_AUDIO_HPP
#define SONOLAB_AUDIO_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace sonolab {

/// Mono audio held as doubles in [-1, 1]. Multi-channel input is reduced to
/// channel 0 before this type exists.
struct AudioClip {
  std::vector<double> samples;
  int sample_rate = 0;  // Hz

  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

/// Reads a RIFF/WAVE file (PCM 16-bit or IEEE float 32-bit, 1-2 channels).
/// 16-bit samples are scaled by 1/32768; only channel 0 is kept.
/// Throws Error{UnsupportedEncoding} for other encodings and
/// Error{MalformedContainer} for structural damage.
AudioClip read_wav(const std::string& path);

/// Parses WAV bytes already in memory (the file reader is a thin wrapper).
AudioClip parse_wav(const std::vector<uint8_t>& bytes);

/// Writes 32-bit IEEE float mono WAV. Lossless for samples in [-1, 1].
void write_wav(const std::string& path, const AudioClip& clip);

/// Sample index of a time point under the project-wide convention:
/// floor(t * rate) at both segment edges.
inline std::size_t sample_index(double t_s, int rate) {
  double idx = t_s * rate;
  if (idx < 0.0) return 0;
  return static_cast<std::size_t>(idx);
}

/// Slice [start_s, end_s) of a clip as floor(start*rate)..floor(end*rate).
/// Slicing adjacent segments and concatenating reproduces the original span.
std::vector<double> slice(const AudioClip& clip, double start_s, double end_s);

}  // namespace sonolab

#endif  // SONOLAB_AUDIO_HPP
