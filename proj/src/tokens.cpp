// sonolab/tokens.cpp
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

#include "sonolab/tokens.hpp"

#include <algorithm>

#include "sonolab/errors.hpp"

namespace sonolab {

const char* to_string(Variety v) { return v == Variety::AG ? "AG" : "CG"; }

const char* to_string(Stress s) {
  return s == Stress::stressed ? "stressed" : "unstressed";
}

Variety variety_from_string(const std::string& s) {
  if (s == "AG") return Variety::AG;
  if (s == "CG") return Variety::CG;
  throw Error(Errc::schema_error, "variety must be AG or CG, got \"" + s + "\"");
}

Stress stress_from_string(const std::string& s) {
  if (s == "stressed") return Stress::stressed;
  if (s == "unstressed") return Stress::unstressed;
  throw Error(Errc::schema_error,
              "stress must be stressed or unstressed, got \"" + s + "\"");
}

namespace {

const Segment* covering_word(const std::vector<Segment>& words, double t) {
  for (const Segment& w : words)
    if (w.start_s <= t && t < w.end_s) return &w;
  return nullptr;
}

// Keyword labels mark the stressed syllable with a leading apostrophe
// ("sa'mi"). The token is stressed iff the mark sits immediately before the
// sonorant letter.
bool stressed_in_keyword(const std::string& label, char sonorant) {
  for (std::size_t i = 0; i + 1 < label.size(); ++i)
    if (label[i] == '\'' && label[i + 1] == sonorant) return true;
  return false;
}

std::string strip_stress_mark(const std::string& label) {
  std::string out;
  for (char c : label)
    if (c != '\'') out.push_back(c);
  return out;
}

}  // namespace

PairResult pair_tokens(const std::vector<Segment>& phones,
                       const TokenMetadata& meta,
                       const std::vector<Segment>& words) {
  PairResult result;
  for (std::size_t i = 0; i < phones.size(); ++i) {
    const Segment& son = phones[i];
    if (!is_sonorant_label(son.label)) continue;

    // Next non-empty label; empty intervals are segmentation padding.
    const Segment* next = nullptr;
    for (std::size_t j = i + 1; j < phones.size(); ++j) {
      if (!phones[j].label.empty()) {
        next = &phones[j];
        break;
      }
    }
    if (next == nullptr) {
      result.skips.push_back({son, "no following segment"});
      continue;
    }
    if (!is_vowel_label(next->label)) {
      result.skips.push_back(
          {son, "followed by \"" + next->label + "\", not a vowel"});
      continue;
    }

    TokenPair pair;
    pair.sonorant = son;
    pair.vowel = *next;
    pair.speaker = meta.speaker;
    pair.variety = meta.variety;
    pair.stress = Stress::unstressed;

    if (const Segment* w = covering_word(words, son.start_s)) {
      pair.keyword = strip_stress_mark(w->label);
      pair.stress = stressed_in_keyword(w->label, son.label[0])
                        ? Stress::stressed
                        : Stress::unstressed;
    } else if (!words.empty()) {
      result.skips.push_back(
          {son, "no covering word interval; stress defaulted to unstressed"});
    }
    result.pairs.push_back(std::move(pair));
  }
  return result;
}

}  // namespace sonolab
