// sonolab/tokens.hpp
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

#ifndef SONOLAB_TOKENS_HPP
#define SONOLAB_TOKENS_HPP

#include <string>
#include <vector>

#include "sonolab/textgrid.hpp"

namespace sonolab {

enum class Variety { AG, CG };
enum class Stress { stressed, unstressed };

const char* to_string(Variety v);
const char* to_string(Stress s);
Variety variety_from_string(const std::string& s);    // throws SchemaError
Stress stress_from_string(const std::string& s);      // throws SchemaError

inline bool is_sonorant_label(const std::string& l) {
  return l == "m" || l == "n" || l == "l" || l == "r";
}
inline bool is_vowel_label(const std::string& l) {
  return l == "a" || l == "i";
}

/// One analyzable token: a sonorant and the vowel that immediately follows
/// it, plus the factor metadata carried into every FeatureRecord.
struct TokenPair {
  Segment sonorant;
  Segment vowel;
  std::string speaker;
  Variety variety = Variety::AG;
  Stress stress = Stress::unstressed;
  std::string keyword;
};

struct TokenSkip {
  Segment segment;
  std::string reason;
};

struct PairResult {
  std::vector<TokenPair> pairs;
  std::vector<TokenSkip> skips;
};

struct TokenMetadata {
  std::string speaker;
  Variety variety = Variety::AG;
};

/// Pairs each sonorant-labeled segment with the next vowel-labeled segment on
/// the (time-sorted) phone tier. Empty-label intervals are transparent to
/// adjacency; any other label between sonorant and vowel breaks the pair and
/// the sonorant is skipped with a reason.
///
/// `words` (optional, may be empty) supplies keyword and stress: the keyword
/// is the covering word interval's label with the stress mark removed, and
/// the token is stressed iff an apostrophe immediately precedes the sonorant
/// letter in that label (e.g. "sa'mi" -> stressed [m], "'sami" -> unstressed
/// [m]). Tokens without a covering word get an empty keyword, default
/// unstressed, and a note in the skip report.
PairResult pair_tokens(const std::vector<Segment>& phones,
                       const TokenMetadata& meta,
                       const std::vector<Segment>& words = {});

}  // namespace sonolab

#endif  // SONOLAB_TOKENS_HPP
