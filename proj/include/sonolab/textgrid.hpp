// sonolab/textgrid.hpp
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

#ifndef SONOLAB_TEXTGRID_HPP
#define SONOLAB_TEXTGRID_HPP

#include <string>
#include <vector>

namespace sonolab {

/// A labeled time interval on an annotation tier.
struct Segment {
  std::string label;
  double start_s = 0.0;
  double end_s = 0.0;
  std::string tier;

  double duration_s() const { return end_s - start_s; }
};

struct Tier {
  std::string name;
  std::vector<Segment> segments;
};

/// Parses a Praat TextGrid document (long or short text form, interval tiers
/// only). Every interval becomes a Segment, including empty-label ones; tier
/// order is preserved. Errors carry the offending line number:
/// SyntaxError, PointTierUnsupported, NonMonotoneIntervals.
std::vector<Tier> parse_textgrid(const std::string& text);

/// Canonical long-form serialization. Times are printed with enough digits
/// that parse(serialize(parse(doc))) == parse(doc) segment-for-segment.
std::string serialize_textgrid(const std::vector<Tier>& tiers);

/// Parses `tier<TAB>label<TAB>start_s<TAB>end_s` lines. `#` comments and
/// blank lines are ignored. Errors: SyntaxError, NegativeDuration.
std::vector<Segment> parse_tsv_annotations(const std::string& text);

/// TSV form of the above, one line per segment.
std::string serialize_tsv_annotations(const std::vector<Segment>& segments);

}  // namespace sonolab

#endif  // SONOLAB_TEXTGRID_HPP
